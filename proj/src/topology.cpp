#include "lsite/topology.hpp"

#include <functional>
#include <map>
#include <set>

namespace lsite {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::raw: return "raw";
        case Mode::up: return "up";
        case Mode::upglue: return "upglue";
    }
    return "?";
}

Mode mode_from_string(const std::string& s) {
    if (s == "raw") return Mode::raw;
    if (s == "up") return Mode::up;
    if (s == "upglue") return Mode::upglue;
    throw InputError("unknown cover system mode '" + s + "'");
}

std::string to_string(DerivationStep::Kind k) {
    switch (k) {
        case DerivationStep::Kind::basic: return "basic";
        case DerivationStep::Kind::up: return "up";
        case DerivationStep::Kind::glue: return "glue";
        case DerivationStep::Kind::minimal: return "minimal";
    }
    return "?";
}

ValidationReport validate_cover_system(const CoverSystem& t) {
    ValidationReport rep;
    const auto& c = *t.category;
    if (t.basics.size() != c.size()) {
        rep.fail({"shape", {}, {}, "basic cover lists do not match the objects"});
        return rep;
    }
    for (std::size_t a = 0; a < c.size(); ++a) {
        for (const auto& s : t.basics[a]) {
            if (s.target() != a || !structurally_equal(*s.category(), c))
                rep.fail({"target", {c.name(a)}, {}, "basic cover does not target its object"});
            else if (!validate_sieve(s).valid)
                rep.fail({"not-a-sieve", {c.name(a)}, {}, "basic cover is not precomposition closed"});
        }
    }
    return rep;
}

namespace {

// A basic contained in every other basic, if any.
const Sieve* least_basic(const std::vector<Sieve>& basics) {
    for (const auto& b : basics) {
        bool least = true;
        for (const auto& o : basics)
            if (!sieve_contains(o, b)) {
                least = false;
                break;
            }
        if (least) return &b;
    }
    return nullptr;
}

std::optional<Sieve> intersection_of(const std::vector<Sieve>& v) {
    if (v.empty()) return std::nullopt;
    Sieve m = v.front();
    for (std::size_t i = 1; i < v.size(); ++i) m = intersect_sieves(m, v[i]);
    return m;
}

std::string sieve_detail(const FiniteLinearCategory& c, const Sieve& s) {
    std::string out = "dims (";
    for (std::size_t b = 0; b < c.size(); ++b) {
        if (b) out += ",";
        out += std::to_string(s.component(b).dim());
    }
    return out + ") on " + c.name(s.target());
}

std::vector<std::pair<std::string, Matrix>> sieve_data(const std::string& prefix, const FiniteLinearCategory& c,
                                                       const Sieve& s) {
    std::vector<std::pair<std::string, Matrix>> out;
    for (std::size_t b = 0; b < c.size(); ++b)
        if (c.hom_dim(b, s.target()) > 0) out.emplace_back(prefix + "@" + c.name(b), s.component(b).basis());
    return out;
}

}  // namespace

bool up_closure_localizing(const CoverSystem& t, const Caps& caps) {
    if (t.mode == Mode::raw) return false;
    const auto& c = *t.category;
    for (std::size_t a = 0; a < c.size(); ++a)
        if (t.basics[a].empty()) return false;
    for (std::size_t a = 0; a < c.size(); ++a)
        for (const auto& r : t.basics[a])
            for (std::size_t ap = 0; ap < c.size(); ++ap) {
                if (c.hom_dim(ap, a) == 0) continue;
                const Sieve* least = least_basic(t.basics[ap]);
                if (least) {
                    // containing the least basic is linear in f
                    for (std::size_t i = 0; i < c.hom_dim(ap, a); ++i)
                        if (!sieve_contains(pullback_sieve(ap, c.basis_vector(ap, a, i), r), *least)) return false;
                    continue;
                }
                for (const auto& f : enumerate_vectors(c.full_hom(ap, a), caps.enum_vectors)) {
                    Sieve p = pullback_sieve(ap, f, r);
                    bool ok = false;
                    for (const auto& g : t.basics[ap])
                        if (sieve_contains(p, g)) {
                            ok = true;
                            break;
                        }
                    if (!ok) return false;
                }
            }
    return true;
}

CoveringOracle::CoveringOracle(CoverSystem t, const Caps& caps, Engine engine) : t_(std::move(t)), caps_(caps) {
    const auto& c = *t_.category;
    const std::size_t n = c.size();
    if (t_.basics.size() != n) throw DimensionMismatch("cover system: basic lists do not match the objects");
    for (std::size_t a = 0; a < n; ++a)
        for (const auto& s : t_.basics[a])
            if (s.target() != a || s.components().size() != n)
                throw PreconditionError("cover system: basic cover at " + c.name(a) + " has the wrong target");
    minimal_.assign(n, std::nullopt);

    if (t_.mode == Mode::raw) {
        for (std::size_t a = 0; a < n; ++a) {
            auto m = intersection_of(t_.basics[a]);
            if (m && covers(*m)) minimal_[a] = m;
        }
        return;
    }
    if (t_.mode == Mode::up) {
        principal_ = true;
        for (std::size_t a = 0; a < n; ++a) {
            auto m = intersection_of(t_.basics[a]);
            if (m && covers(*m))
                minimal_[a] = m;
            else
                principal_ = false;
        }
        return;
    }
    if (engine == Engine::automatic) {
        bool localizing = t_.certified;
        if (!localizing) {
            try {
                localizing = up_closure_localizing(t_, caps_);
            } catch (const CapExceeded&) {
                localizing = false;
            }
        }
        engine = localizing ? Engine::minimal : Engine::exhaustive;
    }
    engine_ = engine;
    if (engine == Engine::minimal)
        run_minimal();
    else
        run_exhaustive();
}

void CoveringOracle::run_minimal() {
    const auto& c = *t_.category;
    const std::size_t n = c.size();
    std::vector<Sieve> m;
    for (std::size_t a = 0; a < n; ++a) {
        auto x = intersection_of(t_.basics[a]);
        if (!x) throw PreconditionError("minimal-cover engine: no basic cover at " + c.name(a));
        m.push_back(*x);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < n; ++a) {
            Sieve next = intersect_sieves(m[a], composite_sieve(m[a], m));
            for (std::size_t ap = 0; ap < n; ++ap)
                for (std::size_t i = 0; i < c.hom_dim(a, ap); ++i)
                    next = intersect_sieves(next, pullback_sieve(a, c.basis_vector(a, ap, i), m[ap]));
            if (next != m[a]) {
                m[a] = std::move(next);
                changed = true;
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a) minimal_[a] = m[a];
    principal_ = true;
}

void CoveringOracle::run_exhaustive() {
    const auto& cp = t_.category;
    const auto& c = *cp;
    const std::size_t n = c.size();
    if (!c.field().is_prime())
        throw UnsupportedField("upglue closure over the rationals: glueing quantifies over all vectors");
    sieves_.resize(n);
    records_.resize(n);
    std::vector<std::map<std::string, std::size_t>> index(n);
    for (std::size_t a = 0; a < n; ++a) {
        sieves_[a] = enumerate_sieves(cp, a, caps_);
        records_[a].assign(sieves_[a].size(), Record{});
        for (std::size_t i = 0; i < sieves_[a].size(); ++i) index[a].emplace(sieves_[a][i].key(), i);
        for (std::size_t i = 0; i < sieves_[a].size(); ++i)
            for (std::size_t j = 0; j < t_.basics[a].size(); ++j) {
                const Sieve& b = t_.basics[a][j];
                if (b == sieves_[a][i]) {
                    records_[a][i] = Record{0, DerivationStep::Kind::basic, j, 0, {}};
                    break;
                }
                if (records_[a][i].round < 0 && sieve_contains(sieves_[a][i], b))
                    records_[a][i] = Record{0, DerivationStep::Kind::up, j, 0, {}};
            }
    }
    // pullbacks f^{-1}s are cached per (object of s, sieve, object of f) as lists of sieve indices
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::string>, std::size_t> pull_cache;
    auto pull = [&](std::size_t a, std::size_t si, std::size_t b, const Matrix& f) {
        auto key = std::make_tuple(a, si, b, f.key());
        auto it = pull_cache.find(key);
        if (it != pull_cache.end()) return it->second;
        std::size_t idx = index[b].at(pullback_sieve(b, f, sieves_[a][si]).key());
        pull_cache.emplace(key, idx);
        return idx;
    };
    for (long round = 1;; ++round) {
        std::vector<std::tuple<std::size_t, std::size_t, Record>> found;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t si = 0; si < sieves_[a].size(); ++si) {
                if (records_[a][si].round >= 0) continue;
                for (std::size_t ri = 0; ri < sieves_[a].size(); ++ri) {
                    const Record& rr = records_[a][ri];
                    if (rr.round < 0 || rr.round >= round) continue;
                    const Sieve& r = sieves_[a][ri];
                    std::set<std::pair<std::size_t, std::size_t>> premises;
                    bool ok = true;
                    for (std::size_t b = 0; b < n && ok; ++b) {
                        if (r.component(b).is_zero()) continue;
                        for (const auto& f : enumerate_vectors(r.component(b), caps_.enum_vectors)) {
                            std::size_t pi = pull(a, si, b, f);
                            const Record& pr = records_[b][pi];
                            if (pr.round < 0 || pr.round >= round) {
                                ok = false;
                                break;
                            }
                            premises.emplace(b, pi);
                        }
                    }
                    if (ok) {
                        found.emplace_back(a, si,
                                           Record{round, DerivationStep::Kind::glue, 0, ri,
                                                  {premises.begin(), premises.end()}});
                        break;
                    }
                }
            }
        if (found.empty()) break;
        for (auto& [a, si, rec] : found) records_[a][si] = std::move(rec);
    }
    principal_ = true;
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<Sieve> cov;
        for (std::size_t i = 0; i < sieves_[a].size(); ++i)
            if (records_[a][i].round >= 0) cov.push_back(sieves_[a][i]);
        auto m = intersection_of(cov);
        if (m && records_[a][index[a].at(m->key())].round >= 0) {
            minimal_[a] = m;
            for (std::size_t i = 0; i < sieves_[a].size(); ++i)
                if ((records_[a][i].round >= 0) != sieve_contains(sieves_[a][i], *m)) principal_ = false;
        } else {
            principal_ = false;
        }
    }
}

std::size_t CoveringOracle::index_of(const Sieve& s) const {
    const auto& list = sieves_.at(s.target());
    // sieves are sorted by (total dim, key)
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i] == s) return i;
    throw PreconditionError("sieve not found in the enumeration (not precomposition closed?)");
}

bool CoveringOracle::covers(const Sieve& s) const {
    const std::size_t a = s.target();
    if (a >= t_.basics.size() || s.components().size() != t_.basics.size())
        throw PreconditionError("covers: sieve does not live on the system's category");
    switch (t_.mode) {
        case Mode::raw:
            for (const auto& b : t_.basics[a])
                if (b == s) return true;
            return false;
        case Mode::up:
            for (const auto& b : t_.basics[a])
                if (sieve_contains(s, b)) return true;
            return false;
        case Mode::upglue:
            if (engine_ == Engine::minimal) return sieve_contains(s, *minimal_[a]);
            return records_[a][index_of(s)].round >= 0;
    }
    return false;
}

Witness CoveringOracle::build_witness(std::size_t a, std::size_t idx) const {
    Witness w;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> done;
    std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t x, std::size_t i) -> std::size_t {
        auto it = done.find({x, i});
        if (it != done.end()) return it->second;
        const Record& r = records_[x][i];
        DerivationStep step{r.kind, x, sieves_[x][i], static_cast<std::size_t>(r.round), r.via, {}, std::nullopt};
        if (r.kind == DerivationStep::Kind::glue) {
            step.via = go(x, r.via_sieve);
            for (const auto& [b, pi] : r.premises) step.premises.push_back(go(b, pi));
        }
        w.steps.push_back(std::move(step));
        done.emplace(std::make_pair(x, i), w.steps.size() - 1);
        return w.steps.size() - 1;
    };
    go(a, idx);
    return w;
}

CoveringVerdict CoveringOracle::is_covering(const Sieve& s) const {
    CoveringVerdict v;
    v.covering = covers(s);
    if (!v.covering) return v;
    const std::size_t a = s.target();
    Witness w;
    if (t_.mode == Mode::raw || t_.mode == Mode::up) {
        for (std::size_t j = 0; j < t_.basics[a].size(); ++j) {
            const Sieve& b = t_.basics[a][j];
            if (b == s) {
                w.steps.push_back({DerivationStep::Kind::basic, a, s, 0, j, {}, std::nullopt});
                break;
            }
            if (t_.mode == Mode::up && sieve_contains(s, b)) {
                w.steps.push_back({DerivationStep::Kind::up, a, s, 0, j, {}, std::nullopt});
                break;
            }
        }
    } else if (engine_ == Engine::minimal) {
        w.steps.push_back({DerivationStep::Kind::minimal, a, s, 0, 0, {}, minimal_[a]});
    } else {
        w = build_witness(a, index_of(s));
    }
    v.witness = std::move(w);
    return v;
}

const Sieve& CoveringOracle::minimal_cover(std::size_t a) const {
    if (a >= minimal_.size()) throw UnknownObject("minimal_cover: object out of range");
    if (!minimal_[a])
        throw PreconditionError("no minimal cover at " + t_.category->name(a) +
                                ": the intersection of the covering sieves is not covering");
    return *minimal_[a];
}

std::vector<Sieve> CoveringOracle::all_sieves(std::size_t a) const {
    if (!sieves_.empty()) return sieves_.at(a);
    return enumerate_sieves(t_.category, a, caps_);
}

std::vector<Sieve> CoveringOracle::covering_sieves(std::size_t a) const {
    std::vector<Sieve> out;
    for (auto& s : all_sieves(a))
        if (covers(s)) out.push_back(std::move(s));
    return out;
}

bool replay(const CoverSystem& t, const Sieve& s, const Witness& w, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (w.steps.empty()) return fail("empty witness");
    const auto& c = *t.category;
    for (std::size_t k = 0; k < w.steps.size(); ++k) {
        const auto& st = w.steps[k];
        const std::string at = "step " + std::to_string(k) + ": ";
        if (st.sieve.target() != st.object) return fail(at + "sieve does not target the step object");
        if (!validate_sieve(st.sieve).valid) return fail(at + "not a sieve");
        switch (st.kind) {
            case DerivationStep::Kind::basic:
                if (st.via >= t.basics[st.object].size() || t.basics[st.object][st.via] != st.sieve)
                    return fail(at + "not the named basic cover");
                break;
            case DerivationStep::Kind::up:
                if (t.mode == Mode::raw) return fail(at + "up step in a raw system");
                if (st.via >= t.basics[st.object].size() || !sieve_contains(st.sieve, t.basics[st.object][st.via]))
                    return fail(at + "does not contain the named basic cover");
                break;
            case DerivationStep::Kind::glue: {
                if (t.mode != Mode::upglue) return fail(at + "glue step outside upglue mode");
                if (st.via >= k || w.steps[st.via].object != st.object) return fail(at + "cover R not derived earlier");
                const Sieve& r = w.steps[st.via].sieve;
                for (std::size_t b = 0; b < c.size(); ++b) {
                    if (r.component(b).is_zero()) continue;
                    for (const auto& f : enumerate_vectors(r.component(b))) {
                        Sieve p = pullback_sieve(b, f, st.sieve);
                        bool ok = false;
                        for (auto q : st.premises)
                            if (q < k && w.steps[q].sieve == p) {
                                ok = true;
                                break;
                            }
                        if (!ok) return fail(at + "pullback along a vector of R is not derived");
                    }
                }
                break;
            }
            case DerivationStep::Kind::minimal: {
                if (!st.cover) return fail(at + "minimal step without cover");
                CoveringOracle o(t, Caps{}, Engine::minimal);
                if (o.minimal_cover(st.object) != *st.cover) return fail(at + "cover is not the minimal cover");
                if (!sieve_contains(st.sieve, *st.cover)) return fail(at + "sieve does not contain the minimal cover");
                break;
            }
        }
    }
    if (w.steps.back().sieve != s) return fail("witness derives a different sieve");
    return true;
}

ValidationReport check_localizing(const CoveringOracle& o) {
    ValidationReport rep;
    const auto& cp = o.category();
    const auto& c = *cp;
    const std::size_t n = c.size();
    for (std::size_t a = 0; a < n; ++a)
        if (!o.covers(representable_sieve(cp, a)))
            rep.fail({"identity", {c.name(a)}, {}, "representable sieve is not covering"});

    auto pull_violation = [&](std::size_t ap, std::size_t a, const Matrix& f, const Sieve& r) {
        Finding fd{"pullback", {c.name(ap), c.name(a)}, {{"f", f}}, ""};
        for (auto& d : sieve_data("R", c, r)) fd.data.push_back(std::move(d));
        fd.detail = "f^-1 R not covering for R " + sieve_detail(c, r);
        rep.fail(std::move(fd));
    };

    if (o.principal()) {
        for (std::size_t a = 0; a < n; ++a) {
            const Sieve& m = o.minimal_cover(a);
            for (std::size_t ap = 0; ap < n; ++ap)
                for (std::size_t i = 0; i < c.hom_dim(ap, a); ++i) {
                    Matrix f = c.basis_vector(ap, a, i);
                    if (!sieve_contains(pullback_sieve(ap, f, m), o.minimal_cover(ap))) pull_violation(ap, a, f, m);
                }
        }
        return rep;
    }
    const auto& t = o.system();
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<Sieve> covers_a = t.mode == Mode::upglue ? o.covering_sieves(a) : t.basics[a];
        for (const auto& r : covers_a)
            for (std::size_t ap = 0; ap < n; ++ap) {
                if (c.hom_dim(ap, a) == 0) continue;
                for (const auto& f : enumerate_vectors(c.full_hom(ap, a), o.caps().enum_vectors))
                    if (!o.covers(pullback_sieve(ap, f, r))) pull_violation(ap, a, f, r);
            }
    }
    return rep;
}

ValidationReport check_topology(const CoveringOracle& o) {
    ValidationReport rep = check_localizing(o);
    const auto& c = *o.category();
    const std::size_t n = c.size();
    if (o.principal()) {
        std::vector<Sieve> m;
        for (std::size_t a = 0; a < n; ++a) m.push_back(o.minimal_cover(a));
        for (std::size_t a = 0; a < n; ++a)
            if (!sieve_contains(composite_sieve(m[a], m), m[a])) {
                Finding fd{"glue", {c.name(a)}, sieve_data("M", c, m[a]), "M(A) is not contained in (M o M)(A)"};
                rep.fail(std::move(fd));
            }
        return rep;
    }
    for (std::size_t a = 0; a < n; ++a) {
        auto sieves = o.all_sieves(a);
        std::vector<Sieve> covering;
        for (const auto& s : sieves)
            if (o.covers(s)) covering.push_back(s);
        for (const auto& s : sieves) {
            if (o.covers(s)) continue;
            for (const auto& r : covering) {
                bool all = true;
                for (std::size_t b = 0; b < n && all; ++b) {
                    if (r.component(b).is_zero()) continue;
                    for (const auto& f : enumerate_vectors(r.component(b), o.caps().enum_vectors))
                        if (!o.covers(pullback_sieve(b, f, s))) {
                            all = false;
                            break;
                        }
                }
                if (all) {
                    Finding fd{"glue", {c.name(a)}, sieve_data("S", c, s), ""};
                    for (auto& d : sieve_data("R", c, r)) fd.data.push_back(std::move(d));
                    fd.detail = "S " + sieve_detail(c, s) + " is locally covering over R " + sieve_detail(c, r) +
                                " but not covering";
                    rep.fail(std::move(fd));
                    break;
                }
            }
        }
    }
    return rep;
}

ValidationReport check_localizing(const CoverSystem& t, const Caps& caps) {
    return check_localizing(CoveringOracle(t, caps));
}

ValidationReport check_topology(const CoverSystem& t, const Caps& caps) {
    return check_topology(CoveringOracle(t, caps));
}

std::vector<Sieve> enumerate_covering_sieves(const CoverSystem& t, std::size_t a, const Caps& caps) {
    return CoveringOracle(t, caps).covering_sieves(a);
}

Sieve minimal_cover(const CoverSystem& t, std::size_t a, const Caps& caps) {
    return CoveringOracle(t, caps).minimal_cover(a);
}

std::vector<Sieve> generating_family(const CoveringOracle& o, std::size_t a) {
    const auto& t = o.system();
    if (t.mode != Mode::upglue) return t.basics[a];
    if (o.principal()) return {o.minimal_cover(a)};
    return o.covering_sieves(a);
}

CoverSystem trivial_topology(const CategoryPtr& c) {
    CoverSystem t{c, {}, Mode::up, true};
    for (std::size_t a = 0; a < c->size(); ++a) t.basics.push_back({representable_sieve(c, a)});
    return t;
}

CoverSystem discrete_topology(const CategoryPtr& c) {
    CoverSystem t{c, {}, Mode::up, true};
    for (std::size_t a = 0; a < c->size(); ++a) t.basics.push_back({zero_sieve(c, a)});
    return t;
}

namespace {

void same_category(const std::vector<CoverSystem>& ts, const char* what) {
    if (ts.empty()) throw PreconditionError(std::string(what) + ": empty list");
    for (const auto& t : ts)
        if (!structurally_equal(*t.category, *ts.front().category))
            throw PreconditionError(std::string(what) + ": systems live on different categories");
}

}  // namespace

CoverSystem topology_inf(const std::vector<CoverSystem>& ts, const Caps& caps) {
    same_category(ts, "topology_inf");
    const auto& cp = ts.front().category;
    std::vector<CoveringOracle> os;
    bool principal = true;
    for (const auto& t : ts) {
        os.emplace_back(t, caps);
        principal = principal && os.back().principal();
    }
    CoverSystem out{cp, std::vector<std::vector<Sieve>>(cp->size()), Mode::up, true};
    if (principal) {
        // S contains every M_i(A) iff it contains their sum
        for (std::size_t a = 0; a < cp->size(); ++a) {
            Sieve m = os.front().minimal_cover(a);
            for (const auto& o : os) m = sum_sieves(m, o.minimal_cover(a));
            out.basics[a] = {Sieve(cp, a, m.components())};
        }
        return out;
    }
    out.mode = Mode::raw;
    out.certified = false;
    for (std::size_t a = 0; a < cp->size(); ++a)
        for (const auto& s : os.front().covering_sieves(a)) {
            bool all = true;
            for (const auto& o : os) all = all && o.covers(s);
            if (all) out.basics[a].push_back(s);
        }
    return out;
}

CoverSystem pruned(const CoverSystem& t) {
    if (t.mode == Mode::raw) return t;
    CoverSystem out = t;
    for (auto& list : out.basics) {
        std::vector<Sieve> kept;
        for (std::size_t i = 0; i < list.size(); ++i) {
            bool drop = false;
            for (std::size_t j = 0; j < list.size() && !drop; ++j) {
                if (i == j) continue;
                if (list[j] == list[i])
                    drop = j < i;
                else if (sieve_contains(list[i], list[j]))
                    drop = true;
            }
            if (!drop) kept.push_back(list[i]);
        }
        list = std::move(kept);
    }
    return out;
}

CoverSystem topology_sup(const std::vector<CoverSystem>& ts, const Caps& caps) {
    same_category(ts, "topology_sup");
    const auto& cp = ts.front().category;
    CoverSystem out{cp, std::vector<std::vector<Sieve>>(cp->size()), Mode::upglue, true};
    for (const auto& t : ts) {
        CoveringOracle o(t, caps);
        if (!check_topology(o).valid) out.certified = false;
        for (std::size_t a = 0; a < cp->size(); ++a)
            for (const auto& g : generating_family(o, a)) out.basics[a].push_back(Sieve(cp, a, g.components()));
    }
    return pruned(out);
}

namespace {

struct Families {
    std::vector<std::vector<Sieve>> a, b;
};

Families tensor_families(const CategoryPtr& ab, const CoverSystem& ta, const CoverSystem& tb, const Caps& caps) {
    if (!ab->factors() || !structurally_equal(*ab->factors()->a, *ta.category) ||
        !structurally_equal(*ab->factors()->b, *tb.category))
        throw PreconditionError("tensor topology: category is not the tensor product of the factor categories");
    if (!(ta.category->field() == tb.category->field())) throw FieldMismatch("tensor topology: field mismatch");
    CoveringOracle oa(ta, caps), ob(tb, caps);
    if (!check_topology(oa).valid) throw PreconditionError("tensor topology: first factor is not a topology");
    if (!check_topology(ob).valid) throw PreconditionError("tensor topology: second factor is not a topology");
    Families f;
    for (std::size_t a = 0; a < ta.category->size(); ++a) f.a.push_back(generating_family(oa, a));
    for (std::size_t b = 0; b < tb.category->size(); ++b) f.b.push_back(generating_family(ob, b));
    return f;
}

}  // namespace

CoverSystem tensor_topology(const CategoryPtr& ab, const CoverSystem& ta, const CoverSystem& tb, const Caps& caps) {
    auto fam = tensor_families(ab, ta, tb, caps);
    const auto& a = ab->factors()->a;
    const auto& b = ab->factors()->b;
    const std::size_t na = a->size(), nb = b->size();
    CoverSystem out{ab, std::vector<std::vector<Sieve>>(na * nb), Mode::upglue, true};
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            auto& list = out.basics[i * nb + j];
            for (const auto& g : fam.a[i]) list.push_back(tensor_sieve(ab, g, representable_sieve(b, j)));
            for (const auto& g : fam.b[j]) list.push_back(tensor_sieve(ab, representable_sieve(a, i), g));
        }
    return pruned(out);
}

CoverSystem tensor_topology(const CoverSystem& ta, const CoverSystem& tb, const Caps& caps) {
    return tensor_topology(tensor_category(ta.category, tb.category), ta, tb, caps);
}

CoverSystem one_sided(const CategoryPtr& ab, const CoverSystem& ta, const CoverSystem& tb, int side,
                      const Caps& caps) {
    if (side != 1 && side != 2) throw PreconditionError("one_sided: side must be 1 or 2");
    auto fam = tensor_families(ab, ta, tb, caps);
    const auto& a = ab->factors()->a;
    const auto& b = ab->factors()->b;
    const std::size_t na = a->size(), nb = b->size();
    CoverSystem out{ab, std::vector<std::vector<Sieve>>(na * nb), Mode::up, true};
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            auto& list = out.basics[i * nb + j];
            if (side == 1)
                for (const auto& g : fam.a[i]) list.push_back(tensor_sieve(ab, g, representable_sieve(b, j)));
            else
                for (const auto& g : fam.b[j]) list.push_back(tensor_sieve(ab, representable_sieve(a, i), g));
        }
    return pruned(out);
}

CoverSystem single_deflation_system(const CategoryPtr& c, const std::vector<Deflation>& deflations) {
    CoverSystem out{c, std::vector<std::vector<Sieve>>(c->size()), Mode::up, false};
    for (const auto& d : deflations)
        out.basics.at(d.target).push_back(sieve_from_generators(c, d.target, {{d.source, d.morphism}}));
    return out;
}

bool same_covering_sieves(const CoveringOracle& x, const CoveringOracle& y) {
    if (!structurally_equal(*x.category(), *y.category())) return false;
    for (std::size_t a = 0; a < x.category()->size(); ++a)
        for (const auto& s : x.all_sieves(a)) {
            Sieve s2(y.category(), a, s.components());
            if (x.covers(s) != y.covers(s2)) return false;
        }
    return true;
}

}  // namespace lsite
