#include "lsite/sieve.hpp"

namespace lsite {

Sieve::Sieve(CategoryPtr c, std::size_t target, std::vector<Subspace> components)
    : cat_(std::move(c)), target_(target), comps_(std::move(components)) {
    if (target_ >= cat_->size()) throw UnknownObject("sieve: target out of range");
    if (comps_.size() != cat_->size()) throw DimensionMismatch("sieve: component count");
    for (std::size_t b = 0; b < comps_.size(); ++b)
        if (comps_[b].ambient_dim() != cat_->hom_dim(b, target_))
            throw DimensionMismatch("sieve: component at " + cat_->name(b) + " has the wrong ambient dimension");
}

std::size_t Sieve::total_dim() const {
    std::size_t t = 0;
    for (const auto& s : comps_) t += s.dim();
    return t;
}

bool Sieve::is_full() const {
    for (const auto& s : comps_)
        if (!s.is_full()) return false;
    return true;
}

bool Sieve::is_zero() const { return total_dim() == 0; }

std::string Sieve::key() const { return submodule_key(comps_); }

namespace {

void same_target(const Sieve& r, const Sieve& s, const char* what) {
    if (r.target() != s.target() || r.components().size() != s.components().size())
        throw PreconditionError(std::string(what) + ": sieves have different targets");
}

// One precomposition pass: comps(B') += comps(B) o hom(B',B).
std::vector<Subspace> close_once(const FiniteLinearCategory& c, std::size_t a, const std::vector<Subspace>& comps) {
    const std::size_t n = c.size();
    std::vector<Subspace> out;
    for (std::size_t bp = 0; bp < n; ++bp) {
        std::vector<Matrix> vecs{comps[bp].basis()};
        for (std::size_t b = 0; b < n; ++b) {
            if (comps[b].is_zero()) continue;
            for (std::size_t j = 0; j < c.hom_dim(bp, b); ++j)
                vecs.push_back(comps[b].basis() * c.pre_compose(bp, b, a, c.basis_vector(bp, b, j)).transpose());
        }
        out.push_back(Subspace::span(Matrix::stack(c.field(), c.hom_dim(bp, a), vecs)));
    }
    return out;
}

Sieve closed(const CategoryPtr& c, std::size_t a, std::vector<Subspace> comps) {
    auto once = close_once(*c, a, comps);
    if (close_once(*c, a, once) != once)
        throw Error("sieve closure did not stabilize after one pass: composition table is not associative");
    return Sieve(c, a, std::move(once));
}

}  // namespace

ValidationReport validate_sieve(const Sieve& s) {
    ValidationReport rep;
    const auto& c = *s.category();
    const std::size_t n = c.size(), a = s.target();
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t k = 0; k < s.component(b).dim(); ++k) {
            Matrix r = s.component(b).basis_vector(k);
            for (std::size_t bp = 0; bp < n; ++bp)
                for (std::size_t j = 0; j < c.hom_dim(bp, b); ++j) {
                    Matrix rg = c.compose(bp, b, a, r, c.basis_vector(bp, b, j));
                    if (!s.component(bp).contains(rg))
                        rep.fail({"precomposition", {c.name(bp), c.name(b), c.name(a)}, {{"r", r}},
                                  "r o " + c.label(bp, b, j) + " leaves the sieve"});
                }
        }
    return rep;
}

Sieve representable_sieve(const CategoryPtr& c, std::size_t a) {
    if (a >= c->size()) throw UnknownObject("representable_sieve: object out of range");
    std::vector<Subspace> comps;
    for (std::size_t b = 0; b < c->size(); ++b) comps.push_back(c->full_hom(b, a));
    return Sieve(c, a, comps);
}

Sieve zero_sieve(const CategoryPtr& c, std::size_t a) {
    if (a >= c->size()) throw UnknownObject("zero_sieve: object out of range");
    std::vector<Subspace> comps;
    for (std::size_t b = 0; b < c->size(); ++b) comps.emplace_back(c->field(), c->hom_dim(b, a));
    return Sieve(c, a, comps);
}

Sieve sieve_from_generators(const CategoryPtr& c, std::size_t a, const std::vector<Generator>& gens) {
    const std::size_t n = c->size();
    std::vector<Subspace> comps;
    for (std::size_t b = 0; b < n; ++b) {
        std::vector<Matrix> vecs;
        for (const auto& g : gens) {
            if (g.morphism.rows() != 1 || g.morphism.cols() != c->hom_dim(g.source, a))
                throw DimensionMismatch("sieve_from_generators: generator is not in hom(" + c->name(g.source) + "," +
                                        c->name(a) + ")");
            if (c->hom_dim(b, g.source) == 0) continue;
            vecs.push_back(c->post_compose(b, g.source, a, g.morphism).transpose());
        }
        comps.push_back(Subspace::span(Matrix::stack(c->field(), c->hom_dim(b, a), vecs)));
    }
    return closed(c, a, std::move(comps));
}

Sieve pullback_sieve(std::size_t a_prime, const Matrix& f, const Sieve& r) {
    const auto& c = r.category();
    const std::size_t a = r.target();
    if (f.rows() != 1 || f.cols() != c->hom_dim(a_prime, a))
        throw DimensionMismatch("pullback_sieve: f is not in hom(" + c->name(a_prime) + "," + c->name(a) + ")");
    std::vector<Subspace> comps;
    for (std::size_t b = 0; b < c->size(); ++b) {
        if (c->hom_dim(b, a_prime) == 0) {
            comps.emplace_back(c->field(), 0);
            continue;
        }
        comps.push_back(preimage(c->post_compose(b, a_prime, a, f), r.component(b)));
    }
    return Sieve(c, a_prime, comps);
}

Sieve intersect_sieves(const Sieve& r, const Sieve& s) {
    same_target(r, s, "intersect_sieves");
    std::vector<Subspace> comps;
    for (std::size_t b = 0; b < r.components().size(); ++b) comps.push_back(intersect(r.component(b), s.component(b)));
    return Sieve(r.category(), r.target(), comps);
}

Sieve sum_sieves(const Sieve& r, const Sieve& s) {
    same_target(r, s, "sum_sieves");
    std::vector<Subspace> comps;
    for (std::size_t b = 0; b < r.components().size(); ++b) comps.push_back(sum(r.component(b), s.component(b)));
    return Sieve(r.category(), r.target(), comps);
}

bool sieve_contains(const Sieve& big, const Sieve& small) {
    same_target(big, small, "sieve_contains");
    return submodule_contains(big.components(), small.components());
}

Sieve composite_sieve(const Sieve& big, const std::vector<Sieve>& family) {
    const auto& c = big.category();
    const std::size_t n = c->size(), a = big.target();
    std::vector<std::vector<Matrix>> vecs(n);
    for (std::size_t b = 0; b < n; ++b) {
        if (family[b].target() != b) throw PreconditionError("composite_sieve: family sieve has the wrong target");
        for (std::size_t k = 0; k < big.component(b).dim(); ++k) {
            for (std::size_t cc = 0; cc < n; ++cc) {
                const Subspace& nb = family[b].component(cc);
                if (nb.is_zero()) continue;
                Matrix m = c->post_compose(cc, b, a, big.component(b).basis_vector(k));
                vecs[cc].push_back(nb.basis() * m.transpose());
            }
        }
    }
    std::vector<Subspace> comps;
    for (std::size_t cc = 0; cc < n; ++cc)
        comps.push_back(Subspace::span(Matrix::stack(c->field(), c->hom_dim(cc, a), vecs[cc])));
    return Sieve(c, a, comps);
}

Sieve tensor_sieve(const CategoryPtr& ab, const Sieve& r, const Sieve& s) {
    if (!ab->factors()) throw PreconditionError("tensor_sieve: not a tensor category");
    if (!structurally_equal(*ab->factors()->a, *r.category()) || !structurally_equal(*ab->factors()->b, *s.category()))
        throw PreconditionError("tensor_sieve: sieves do not live on the factors");
    const std::size_t na = r.category()->size(), nb = s.category()->size();
    std::vector<Subspace> comps;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) comps.push_back(tensor(r.component(i), s.component(j)));
    return Sieve(ab, r.target() * nb + s.target(), comps);
}

Sieve image_sieve(const LinearFunctor& phi, const Sieve& r) {
    std::vector<Generator> gens;
    for (std::size_t b = 0; b < r.components().size(); ++b)
        for (std::size_t k = 0; k < r.component(b).dim(); ++k)
            gens.push_back({phi.object(b), phi.apply(b, r.target(), r.component(b).basis_vector(k))});
    return sieve_from_generators(phi.target(), phi.object(r.target()), gens);
}

Sieve functor_preimage_sieve(const LinearFunctor& phi, std::size_t a, const Sieve& t) {
    if (t.target() != phi.object(a)) throw PreconditionError("functor_preimage_sieve: sieve is not on phi(A)");
    const auto& s = phi.source();
    std::vector<Subspace> comps;
    for (std::size_t b = 0; b < s->size(); ++b) {
        if (s->hom_dim(b, a) == 0) {
            comps.emplace_back(s->field(), 0);
            continue;
        }
        comps.push_back(preimage(phi.hom_map(b, a), t.component(phi.object(b))));
    }
    return Sieve(s, a, comps);
}

PresheafModule quotient_of_representable(const Sieve& r) {
    auto rep = representable_module(r.category(), r.target());
    return subquotient(rep, full_submodule(rep), r.components());
}

Submodule as_submodule(const Sieve& s) { return s.components(); }

std::vector<Sieve> enumerate_sieves(const CategoryPtr& c, std::size_t a, const Caps& caps) {
    if (a >= c->size()) throw UnknownObject("enumerate_sieves: object out of range");
    std::vector<Sieve> out;
    for (auto& u : enumerate_submodules(representable_module(c, a), caps)) out.emplace_back(c, a, std::move(u));
    return out;
}

}  // namespace lsite
