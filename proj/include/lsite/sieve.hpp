#pragma once

#include <vector>

#include "lsite/category.hpp"

namespace lsite {

// A subfunctor of the representable a(-,A), stored componentwise: component(B) is a
// subspace of hom(B,A). Constructors trust their input; validate_sieve checks closure.
class Sieve {
public:
    Sieve() = default;
    Sieve(CategoryPtr c, std::size_t target, std::vector<Subspace> components);

    const CategoryPtr& category() const { return cat_; }
    std::size_t target() const { return target_; }
    const Subspace& component(std::size_t b) const { return comps_[b]; }
    const std::vector<Subspace>& components() const { return comps_; }
    std::size_t total_dim() const;
    bool is_full() const;
    bool is_zero() const;
    std::string key() const;

    bool operator==(const Sieve& o) const { return target_ == o.target_ && comps_ == o.comps_; }
    bool operator!=(const Sieve& o) const { return !(*this == o); }

private:
    CategoryPtr cat_;
    std::size_t target_ = 0;
    std::vector<Subspace> comps_;
};

struct Generator {
    std::size_t source;
    Matrix morphism;  // vector in hom(source, target)
};

ValidationReport validate_sieve(const Sieve& s);

Sieve representable_sieve(const CategoryPtr& c, std::size_t a);
Sieve zero_sieve(const CategoryPtr& c, std::size_t a);
Sieve sieve_from_generators(const CategoryPtr& c, std::size_t a, const std::vector<Generator>& gens);
// f^{-1}r for f in hom(a_prime, r.target()).
Sieve pullback_sieve(std::size_t a_prime, const Matrix& f, const Sieve& r);
Sieve intersect_sieves(const Sieve& r, const Sieve& s);
Sieve sum_sieves(const Sieve& r, const Sieve& s);
bool sieve_contains(const Sieve& big, const Sieve& small);
// Sieve generated by r o n for r in big(B) and n in family[B], family[B] a sieve on B.
Sieve composite_sieve(const Sieve& big, const std::vector<Sieve>& family);

// R (x) S inside the representable of (A,B) in ab = a (x) b.
Sieve tensor_sieve(const CategoryPtr& ab, const Sieve& r, const Sieve& s);
// Sieve on phi(A) generated by phi of r.
Sieve image_sieve(const LinearFunctor& phi, const Sieve& r);
// { g in hom(B,A) | phi(g) in t(phi B) }, t a sieve on phi(a).
Sieve functor_preimage_sieve(const LinearFunctor& phi, std::size_t a, const Sieve& t);

PresheafModule quotient_of_representable(const Sieve& r);
Submodule as_submodule(const Sieve& s);

// All sieves on a, ordered by total dimension then canonical key.
std::vector<Sieve> enumerate_sieves(const CategoryPtr& c, std::size_t a, const Caps& caps = {});

}  // namespace lsite
