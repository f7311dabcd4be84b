#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lsite/subspace.hpp"

using namespace lsite;

namespace {

const Field F2 = Field::prime(2);

Matrix m2(std::size_t r, std::size_t c, std::vector<std::int64_t> e) {
    return Matrix::from_ints(F2, r, c, e);
}

// Brute-force model over F_2: a vector is a bitmask, a subspace a set of masks.
using VecSet = std::set<unsigned>;

unsigned to_mask(const Matrix& v) {
    unsigned m = 0;
    for (std::size_t j = 0; j < v.cols(); ++j)
        if (!v.is_zero_at(0, j)) m |= 1u << j;
    return m;
}

Matrix from_mask(unsigned m, std::size_t n) {
    Matrix v(F2, 1, n);
    for (std::size_t j = 0; j < n; ++j)
        if (m >> j & 1u) v.set_int(0, j, 1);
    return v;
}

VecSet closure(const std::vector<unsigned>& gens) {
    VecSet s{0};
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto a : VecSet(s))
            for (auto g : gens)
                if (s.insert(a ^ g).second) grew = true;
    }
    return s;
}

VecSet as_set(const Subspace& s) {
    VecSet out;
    for (const auto& v : enumerate_vectors(s)) out.insert(to_mask(v));
    return out;
}

// Image of a mask under an F_2 matrix acting on columns.
unsigned apply_mask(const Matrix& m, unsigned x) {
    return to_mask(apply(m, from_mask(x, m.cols())));
}

Subspace random_subspace(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<unsigned> pick(0, (1u << n) - 1);
    std::uniform_int_distribution<int> count(0, static_cast<int>(n));
    std::vector<Matrix> gens;
    int k = count(rng);
    for (int i = 0; i < k; ++i) gens.push_back(from_mask(pick(rng), n));
    return Subspace::span(F2, n, gens);
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::bernoulli_distribution bit(0.5);
    Matrix m(F2, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (bit(rng)) m.set_int(i, j, 1);
    return m;
}

}  // namespace

TEST_CASE("rref examples") {
    CHECK(rref(Matrix::identity(F2, 2)) == Matrix::identity(F2, 2));
    CHECK(rref(m2(2, 2, {1, 1, 0, 1})) == Matrix::identity(F2, 2));
    auto z = rref(Matrix(F2, 1, 3));
    CHECK(z.rows() == 0);
    CHECK(z.cols() == 3);
}

TEST_CASE("rref over the rationals") {
    Field Q = Field::rationals();
    Matrix m = Matrix::from_rationals(Q, 2, 3, {1, 2, 3, 2, 4, 7});
    Matrix r = rref(m);
    CHECK(r == Matrix::from_rationals(Q, 2, 3, {1, 2, 0, 0, 0, 1}));
    Matrix k = kernel(Matrix::from_rationals(Q, 1, 2, {Rational(2), Rational(3)})).basis();
    CHECK(k == Matrix::from_rationals(Q, 1, 2, {Rational(1), Rational(-2, 3)}));
    CHECK_THROWS_AS(enumerate_vectors(Subspace::full(Q, 1)), UnsupportedField);
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
}

TEST_CASE("kernel image preimage examples") {
    CHECK(kernel(m2(1, 2, {1, 1})) == Subspace::span(m2(1, 2, {1, 1})));
    Matrix zero_map(F2, 2, 3);
    CHECK(image(zero_map).is_zero());
    Matrix m = m2(2, 3, {1, 0, 1, 0, 1, 1});
    CHECK(preimage(m, Subspace(F2, 2)) == kernel(m));
    CHECK_THROWS_AS(preimage(m, Subspace(F2, 3)), DimensionMismatch);
}

TEST_CASE("lattice examples") {
    auto e1 = Subspace::span(m2(1, 2, {1, 0}));
    auto e2 = Subspace::span(m2(1, 2, {0, 1}));
    auto d = Subspace::span(m2(1, 2, {1, 1}));
    CHECK(sum(e1, e2).is_full());
    CHECK(intersect(e1, d).is_zero());
    CHECK(d.contains(m2(1, 2, {1, 1})));
    CHECK_THROWS_AS(sum(e1, Subspace(F2, 3)), DimensionMismatch);
}

TEST_CASE("enumerate_vectors examples") {
    auto zero = Subspace(F2, 3);
    auto vs = enumerate_vectors(zero);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].is_zero());
    auto d = Subspace::span(m2(1, 2, {1, 1}));
    auto dv = enumerate_vectors(d);
    REQUIRE(dv.size() == 2);
    CHECK(dv[0] == m2(1, 2, {0, 0}));
    CHECK(dv[1] == m2(1, 2, {1, 1}));
    CHECK(enumerate_vectors(Subspace::full(F2, 2)).size() == 4);
    CHECK_THROWS_AS(enumerate_vectors(Subspace::full(F2, 5), 16), CapExceeded);
    try {
        enumerate_vectors(Subspace::full(F2, 5), 16);
    } catch (const CapExceeded& e) {
        CHECK(e.cap() == "cap-enum");
        CHECK(e.limit() == 16);
    }
}

TEST_CASE("enumeration over F_3 is lexicographic") {
    Field F3 = Field::prime(3);
    auto s = Subspace::full(F3, 2);
    auto vs = enumerate_vectors(s);
    REQUIRE(vs.size() == 9);
    CHECK(vs[1] == Matrix::from_ints(F3, 1, 2, {0, 1}));
    CHECK(vs[3] == Matrix::from_ints(F3, 1, 2, {1, 0}));
    CHECK(vs[8] == Matrix::from_ints(F3, 1, 2, {2, 2}));
}

TEST_CASE("rref is idempotent and canonical") {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        Matrix m = random_matrix(rng, 1 + t % 4, 1 + t % 5);
        Matrix r = rref(m);
        CHECK(rref(r) == r);
        // same row space from a shuffled, redundant presentation
        Matrix doubled = Matrix::stack(F2, m.cols(), {m, m});
        CHECK(Subspace::span(doubled) == Subspace::span(m));
    }
}

TEST_CASE("lattice operations agree with brute force over F_2") {
    std::mt19937 rng(11);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int t = 0; t < 60; ++t) {
            Subspace a = random_subspace(rng, n), b = random_subspace(rng, n);
            VecSet sa = as_set(a), sb = as_set(b);
            // oracle sets from generators, independent of rref
            std::vector<unsigned> ga, gb;
            for (std::size_t i = 0; i < a.dim(); ++i) ga.push_back(to_mask(a.basis_vector(i)));
            for (std::size_t i = 0; i < b.dim(); ++i) gb.push_back(to_mask(b.basis_vector(i)));
            CHECK(sa == closure(ga));
            std::vector<unsigned> gab = ga;
            gab.insert(gab.end(), gb.begin(), gb.end());
            CHECK(as_set(sum(a, b)) == closure(gab));
            VecSet inter;
            std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  std::inserter(inter, inter.begin()));
            CHECK(as_set(intersect(a, b)) == inter);
            CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
            for (unsigned x = 0; x < (1u << n); ++x)
                CHECK(a.contains(from_mask(x, n)) == (sa.count(x) == 1));
            CHECK(a.contains(b) == std::includes(sa.begin(), sa.end(), sb.begin(), sb.end()));
        }
    }
}

TEST_CASE("kernel image preimage agree with brute force over F_2") {
    std::mt19937 rng(23);
    for (int t = 0; t < 150; ++t) {
        std::size_t r = 1 + t % 4, c = 1 + (t / 4) % 4;
        Matrix m = random_matrix(rng, r, c);
        VecSet ker, img;
        for (unsigned x = 0; x < (1u << c); ++x) {
            unsigned y = apply_mask(m, x);
            img.insert(y);
            if (y == 0) ker.insert(x);
        }
        CHECK(as_set(kernel(m)) == ker);
        CHECK(as_set(image(m)) == img);
        Subspace s = random_subspace(rng, r);
        VecSet ss = as_set(s), pre;
        for (unsigned x = 0; x < (1u << c); ++x)
            if (ss.count(apply_mask(m, x))) pre.insert(x);
        CHECK(as_set(preimage(m, s)) == pre);
        // preimage of the image of a subspace contains it
        Subspace d = random_subspace(rng, c);
        std::vector<Matrix> imgs;
        for (std::size_t i = 0; i < d.dim(); ++i) imgs.push_back(apply(m, d.basis_vector(i)));
        CHECK(preimage(m, Subspace::span(F2, r, imgs)).contains(d));
    }
}

TEST_CASE("tensor of subspaces") {
    auto a = Subspace::span(m2(1, 2, {1, 1}));
    auto b = Subspace::full(F2, 2);
    auto t = tensor(a, b);
    CHECK(t.dim() == 2);
    CHECK(t.contains(m2(1, 4, {1, 0, 1, 0})));
    CHECK(!t.contains(m2(1, 4, {1, 0, 0, 0})));
}

TEST_CASE("subspace counts") {
    CHECK(subspace_count(2, 0, 1000) == 1);
    CHECK(subspace_count(2, 1, 1000) == 2);
    CHECK(subspace_count(2, 2, 1000) == 5);
    CHECK(subspace_count(2, 3, 1000) == 16);
    CHECK(subspace_count(2, 4, 1000) == 67);
    CHECK(subspace_count(2, 16, 1000) == 1001);
}
