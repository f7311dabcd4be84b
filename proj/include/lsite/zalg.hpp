#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lsite/functoriality.hpp"

namespace lsite {

// Positively graded algebra truncated at degree `bound`. mult[n*(bound+1)+m] has one row per
// basis pair (i,j) of A_n x A_m at index i*dim A_m + j, holding the product in A_{n+m}; it is
// empty when n+m exceeds the bound.
struct GradedAlgebra {
    Field field;
    std::size_t bound = 0;
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::string>> labels;
    std::vector<Matrix> mult;
    Matrix unit;  // in A_0
    // Exponent vectors of the basis monomials, for algebras built from monomials.
    std::vector<std::string> variables;
    std::vector<std::size_t> weights;
    std::vector<std::vector<std::vector<std::size_t>>> monomials;

    bool connected() const { return !dims.empty() && dims[0] == 1; }
    const Matrix& table(std::size_t n, std::size_t m) const { return mult[n * (bound + 1) + m]; }
    Matrix multiply(std::size_t n, std::size_t m, const Matrix& x, const Matrix& y) const;
};

ValidationReport validate_graded(const GradedAlgebra& g);
bool operator==(const GradedAlgebra& x, const GradedAlgebra& y);

// k[variables] with the given weights (default 1), monomial basis in each degree.
GradedAlgebra polynomial_algebra(const Field& f, const std::vector<std::string>& variables, std::size_t bound,
                                 std::vector<std::size_t> weights = {});
// Strikes the listed monomials (exponent vectors) and their multiples.
GradedAlgebra monomial_quotient(const GradedAlgebra& g, const std::vector<std::vector<std::size_t>>& relations);
// (A x_cart B)_n = A_n (x) B_n.
GradedAlgebra segre(const GradedAlgebra& a, const GradedAlgebra& b);

// Z-algebra on the objects lo..hi (named by their integers); hom(n,m) = a(n,m), zero unless n >= m.
class WindowedZAlgebra {
public:
    WindowedZAlgebra(long lo, long hi, CategoryPtr c);

    long lo() const { return lo_; }
    long hi() const { return hi_; }
    const CategoryPtr& category() const { return cat_; }
    std::size_t object(long n) const;
    std::size_t piece_dim(long n, long m) const;
    bool connected() const;

private:
    long lo_, hi_;
    CategoryPtr cat_;
};

ValidationReport validate_zalgebra(const WindowedZAlgebra& z);

// a(n,m) = A_{n-m}, composition = multiplication.
WindowedZAlgebra from_graded(const GradedAlgebra& g, long lo, long hi);

struct Diagonal {
    WindowedZAlgebra algebra;  // c(n,m) = a(n,m) (x) b(n,m)
    CategoryPtr tensor;        // a (x) b
    LinearFunctor embedding;   // n |-> (n,n)
};
Diagonal diagonal(const WindowedZAlgebra& a, const WindowedZAlgebra& b);

// a(-,m)_{>=n}: full at the objects l >= n, zero below.
Sieve tails_sieve(const WindowedZAlgebra& z, long m, long n);
CoverSystem tails_system(const WindowedZAlgebra& z, Mode mode = Mode::up);

// (n,m) with n > m+1 where a(m+1,m) o a(n,m+1) does not span a(n,m).
std::vector<std::pair<long, long>> degree_one_gaps(const WindowedZAlgebra& z);
bool check_generated_in_degree_one(const WindowedZAlgebra& z);

// Delta with the tails topology on the diagonal and the tensor tails topology on a (x) b.
SiteMorphism delta_functor(const WindowedZAlgebra& a, const WindowedZAlgebra& b, const Caps& caps = {});

// The cover a(-,m1)_{>=m2} (x) b(-,m2) (m2 > m1) is generated by the x (x) 1 out of (m2,m2),
// and symmetrically; one finding per object where this fails.
ValidationReport delta_generation_witnesses(const Diagonal& d, const WindowedZAlgebra& a, const WindowedZAlgebra& b);
// Delta(c(-,m)_{>=n}) generates a(-,m)_{>=n} (x) b(-,m)_{>=n}.
ValidationReport delta_tails_images(const Diagonal& d, const WindowedZAlgebra& a, const WindowedZAlgebra& b);

// (G), (F), (FF) and covering-set equality for Delta on the window; the report is labelled
// window-limited.
PropertyReport check_delta_LC_on_window(const WindowedZAlgebra& a, const WindowedZAlgebra& b, const Caps& caps = {});

struct SweepRow {
    long lo, hi;
    bool verdict;
    std::size_t counterexamples;
};
// check_delta_LC_on_window for from_graded windows [lo, lo+2] .. [lo, hi_max].
std::vector<SweepRow> window_sweep(const GradedAlgebra& a, const GradedAlgebra& b, long lo, long hi_max,
                                   const Caps& caps = {});

}  // namespace lsite
