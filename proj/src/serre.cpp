#include "lsite/serre.hpp"

#include <map>
#include <set>

namespace lsite {

ModulePredicate null_class(std::shared_ptr<const CoveringOracle> o) {
    return [o](const PresheafModule& f) { return is_null_presheaf(f, *o); };
}

ModulePredicate supported_on(std::vector<std::size_t> objects) {
    return [objects](const PresheafModule& f) {
        for (std::size_t a = 0; a < f.dims().size(); ++a) {
            bool inside = false;
            for (auto o : objects) inside = inside || o == a;
            if (!inside && f.dim(a) != 0) return false;
        }
        return true;
    };
}

ModulePredicate is_simple_module(const Caps& caps) {
    // simple iff every nonzero vector generates everything
    return [caps](const PresheafModule& f) {
        if (f.is_zero()) return false;
        const std::size_t n = f.dims().size(), full = f.total_dim();
        const Submodule zero = zero_submodule(f);
        for (std::size_t a = 0; a < n; ++a)
            for (const auto& x : enumerate_vectors(Subspace::full(f.field(), f.dim(a)), caps.enum_vectors)) {
                if (x.is_zero()) continue;
                Submodule g = zero;
                g[a] = Subspace::span(x);
                std::size_t t = 0;
                for (const auto& s : generate_submodule(f, g)) t += s.dim();
                if (t != full) return false;
            }
        return true;
    };
}

ModulePredicate either(ModulePredicate p, ModulePredicate q) {
    return [p, q](const PresheafModule& f) { return p(f) || q(f); };
}

namespace {

void check_size(const PresheafModule& c, const Caps& caps) {
    if (c.total_dim() > caps.submodule_total_dim)
        throw CapExceeded("cap-submodule", caps.submodule_total_dim,
                          "module of total dimension " + std::to_string(c.total_dim()));
}

std::size_t total(const Submodule& u) {
    std::size_t t = 0;
    for (const auto& s : u) t += s.dim();
    return t;
}

}  // namespace

bool gabriel_product_member(const PresheafModule& c, const ModulePredicate& w1, const ModulePredicate& w2,
                            const Caps& caps) {
    check_size(c, caps);
    const Submodule zero = zero_submodule(c), full = full_submodule(c);
    for (const auto& w : enumerate_submodules(c, caps))
        if (w1(subquotient(c, w, zero)) && w2(subquotient(c, full, w))) return true;
    return false;
}

std::optional<std::vector<Submodule>> hull_filtration(const PresheafModule& c, const ModulePredicate& h,
                                                      std::size_t max_len, const Caps& caps) {
    check_size(c, caps);
    const auto subs = enumerate_submodules(c, caps);
    const std::size_t full_dim = c.total_dim();
    // failed[(index, remaining steps)]
    std::set<std::pair<std::size_t, std::size_t>> failed;
    std::map<std::pair<std::size_t, std::size_t>, bool> quotient_ok;
    std::vector<Submodule> chain;
    std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t cur, std::size_t left) -> bool {
        if (total(subs[cur]) == full_dim) return true;
        if (left == 0 || failed.count({cur, left})) return false;
        for (std::size_t nxt = 0; nxt < subs.size(); ++nxt) {
            if (total(subs[nxt]) <= total(subs[cur]) || !submodule_contains(subs[nxt], subs[cur])) continue;
            auto key = std::make_pair(cur, nxt);
            auto it = quotient_ok.find(key);
            if (it == quotient_ok.end())
                it = quotient_ok.emplace(key, h(subquotient(c, subs[nxt], subs[cur]))).first;
            if (!it->second) continue;
            chain.push_back(subs[nxt]);
            if (dfs(nxt, left - 1)) return true;
            chain.pop_back();
        }
        failed.insert({cur, left});
        return false;
    };
    // subs[0] is the zero submodule (smallest total dimension)
    chain.push_back(subs.front());
    if (dfs(0, max_len)) return chain;
    return std::nullopt;
}

bool sloc_hull_member(const PresheafModule& c, const ModulePredicate& h, std::size_t max_len, const Caps& caps) {
    return hull_filtration(c, h, max_len, caps).has_value();
}

}  // namespace lsite
