#pragma once

#include <cstdint>
#include <vector>

#include "lsite/errors.hpp"
#include "lsite/matrix.hpp"

namespace lsite {

// Subspace of F^n stored by its reduced row echelon basis (the sole equality
// representative).
class Subspace {
public:
    Subspace() = default;
    Subspace(Field f, std::size_t ambient);  // zero subspace

    static Subspace span(const Matrix& rows);
    static Subspace span(Field f, std::size_t ambient, const std::vector<Matrix>& vectors);
    static Subspace full(Field f, std::size_t ambient);

    const Field& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Matrix basis_vector(std::size_t i) const { return basis_.row(i); }

    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    bool contains(const Matrix& v) const;
    bool contains(const Subspace& s) const;
    // v minus its projection along the pivots; zero iff v lies in the subspace.
    Matrix reduce(const Matrix& v) const;
    // Coordinates of v in the canonical basis (the pivot entries); v must lie here.
    Matrix coordinates(const Matrix& v) const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    std::string key() const { return basis_.key(); }

private:
    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace image(const Matrix& m);
Subspace kernel(const Matrix& m);
Subspace preimage(const Matrix& m, const Subspace& s);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
// Subspace of F^(n*m) spanned by u (x) v for u in a, v in b.
Subspace tensor(const Subspace& a, const Subspace& b);
// Annihilator under the standard pairing: { y | <x,y> = 0 for all x in s }.
Subspace annihilator(const Subspace& s);

// All p^dim vectors, lexicographic in the coefficients over the canonical basis.
std::vector<Matrix> enumerate_vectors(const Subspace& s,
                                      std::uint64_t cap = Caps{}.enum_vectors);
// p^d if it does not exceed cap, otherwise throws CapExceeded naming the cap.
std::uint64_t checked_power(const Field& f, std::size_t d, std::uint64_t cap, const char* what);

// Number of subspaces of F_p^n (sum of Gaussian binomials), saturating at limit.
std::uint64_t subspace_count(std::uint32_t p, std::size_t n, std::uint64_t limit);

}  // namespace lsite
