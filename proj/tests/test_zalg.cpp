#include <doctest.h>

#include "lsite/zalg.hpp"
#include "oracle.hpp"

using namespace lsite;
using oracle::F2;

namespace {

GradedAlgebra kx(std::size_t bound, const std::string& v = "x") { return polynomial_algebra(F2, {v}, bound); }
GradedAlgebra kxy(std::size_t bound, const std::string& v = "x", const std::string& w = "y") {
    return polynomial_algebra(F2, {v, w}, bound);
}

// Monomials of degree d in `vars` variables with the given weights, by counting exponent tuples.
std::size_t monomial_count(std::size_t vars, std::size_t d, std::size_t weight = 1) {
    std::size_t count = 0;
    std::vector<std::size_t> e(vars, 0);
    while (true) {
        std::size_t deg = 0;
        for (auto x : e) deg += x * weight;
        if (deg == d) ++count;
        std::size_t k = 0;
        while (k < vars && ++e[k] > d) e[k++] = 0;
        if (k == vars) break;
    }
    return vars == 0 ? (d == 0) : count;
}

std::vector<std::size_t> component_dims(const Sieve& s) {
    std::vector<std::size_t> out;
    for (const auto& c : s.components()) out.push_back(c.dim());
    return out;
}

// Objects 0,1,2 with a(n,m) = k for n > m except a(2,0) = k^2; x o x is the first basis
// vector of a(2,0) and the second is not a composite.
WindowedZAlgebra enlarged_a20() {
    std::vector<std::size_t> dims{1, 0, 0, 1, 1, 0, 2, 1, 1};
    Matrix one = Matrix::from_ints(F2, 1, 1, {1});
    auto c = category_from_rule(
        F2, {"0", "1", "2"}, dims, {one, one, one},
        [&dims](std::size_t x, std::size_t y, std::size_t z, std::size_t i, std::size_t j) {
            const std::size_t d = dims[x * 3 + z];
            if (y == z) return Matrix::unit_row(F2, d, j);
            if (x == y) return Matrix::unit_row(F2, d, i);
            return Matrix::unit_row(F2, d, 0);
        });
    return WindowedZAlgebra(0, 2, c);
}

// Sieves R on the diagonal whose image generates a cover of the tensor tails topology.
bool pullback_matches_tails(const WindowedZAlgebra& a, const WindowedZAlgebra& b, const WindowedZAlgebra& seg) {
    auto m = delta_functor(a, b);
    CoveringOracle src(tails_system(seg)), tgt(m.target);
    for (std::size_t x = 0; x < seg.category()->size(); ++x)
        for (const auto& r : enumerate_sieves(seg.category(), x)) {
            // the diagonal and the Segre window share structure constants, so r transports verbatim
            Sieve on_diag(m.functor.source(), x, r.components());
            if (src.covers(r) != tgt.covers(image_sieve(m.functor, on_diag))) return false;
        }
    return true;
}

CoverSystem tails_tensor_basics(const WindowedZAlgebra& a, const WindowedZAlgebra& b, const CategoryPtr& ab) {
    CoverSystem t{ab, {}, Mode::upglue, false};
    for (long m1 = a.lo(); m1 <= a.hi(); ++m1)
        for (long m2 = b.lo(); m2 <= b.hi(); ++m2) {
            std::vector<Sieve> list;
            for (long n1 = m1; n1 <= a.hi(); ++n1)
                for (long n2 = m2; n2 <= b.hi(); ++n2)
                    list.push_back(tensor_sieve(ab, tails_sieve(a, m1, n1), tails_sieve(b, m2, n2)));
            t.basics.push_back(std::move(list));
        }
    return t;
}

}  // namespace

TEST_CASE("polynomial algebras and monomial quotients") {
    auto p = kxy(4);
    CHECK(p.dims[2] == 3);
    CHECK(p.labels[2] == std::vector<std::string>{"x^2", "xy", "y^2"});
    for (std::size_t d = 0; d <= 4; ++d) {
        CHECK(p.dims[d] == monomial_count(2, d));
        CHECK(kx(4).dims[d] == 1);
        CHECK(polynomial_algebra(F2, {"x", "y", "z"}, 4).dims[d] == monomial_count(3, d));
    }
    CHECK(validate_graded(p).valid);
    CHECK(p.connected());

    auto q = monomial_quotient(p, {{2, 0}});
    CHECK(q.dims[2] == 2);
    CHECK(q.labels[2] == std::vector<std::string>{"xy", "y^2"});
    CHECK(q.dims[3] == 2);  // xy^2, y^3
    CHECK(validate_graded(q).valid);
    // x * x = 0 in the quotient
    Matrix x = Matrix::unit_row(F2, 2, 0);
    CHECK(q.multiply(1, 1, x, x).is_zero());

    CHECK_THROWS_AS(monomial_quotient(p, {{5, 0}}), InputError);
    CHECK_THROWS_AS(monomial_quotient(p, {{1, 1, 1}}), InputError);

    auto w = polynomial_algebra(F2, {"x"}, 4, {2});
    CHECK(w.dims == std::vector<std::size_t>{1, 0, 1, 0, 1});
    CHECK(validate_graded(w).valid);

    auto r = polynomial_algebra(Field::rationals(), {"x", "y"}, 3);
    CHECK(r.dims == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(validate_graded(r).valid);
}

TEST_CASE("validate_graded catches a broken table") {
    auto p = kxy(2);
    p.mult[1 * 3 + 1].set_int(1, 0, 1);  // x*y picks up an x^2 term, y*x does not
    CHECK(validate_graded(p).valid);      // still associative within the bound
    auto q = kxy(3);
    q.mult[1 * 4 + 1].set_int(1, 0, 1);
    auto rep = validate_graded(q);
    CHECK_FALSE(rep.valid);
    CHECK(rep.violations.front().kind == "associativity");
    auto u = kx(2);
    u.unit = Matrix(F2, 1, 1);
    CHECK(validate_graded(u).violations.front().kind == "unit");
}

TEST_CASE("segre products") {
    auto s = segre(kx(3), kx(3, "y"));
    CHECK(s.dims == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(s == kx(3, "t"));
    auto s2 = segre(kxy(3, "x0", "x1"), kxy(3, "y0", "y1"));
    CHECK(s2.dims == std::vector<std::size_t>{1, 4, 9, 16});
    CHECK(validate_graded(s2).valid);
    CHECK(s2.labels[1][1] == "x0⊗y1");
    // segre with the ground field in degree 0
    auto k = polynomial_algebra(F2, {}, 3);
    CHECK(k.dims == std::vector<std::size_t>{1, 0, 0, 0});
    CHECK(segre(kxy(3), k).dims == std::vector<std::size_t>{1, 0, 0, 0});
    CHECK_THROWS_AS(segre(kx(3), kx(2)), PreconditionError);
}

TEST_CASE("windowed Z-algebras from graded algebras") {
    auto z = from_graded(kxy(3), 0, 3);
    CHECK(validate_zalgebra(z).valid);
    CHECK(z.piece_dim(3, 1) == 3);
    CHECK(z.piece_dim(1, 3) == 0);
    CHECK(z.connected());
    CHECK(z.category()->name(2) == "2");
    for (long n = 0; n <= 4; ++n)
        for (long m = 0; m <= n; ++m) CHECK(from_graded(kx(4), 0, 4).piece_dim(n, m) == 1);
    auto shifted = from_graded(kxy(3), -2, 1);
    CHECK(shifted.category()->name(0) == "-2");
    CHECK(structurally_equal(*shifted.category(), *from_graded(kxy(3), 5, 8).category()) == false);
    CHECK(shifted.piece_dim(1, -2) == 4);
    CHECK_THROWS_AS(from_graded(kxy(2), 0, 3), PreconditionError);
    CHECK_THROWS_AS(z.object(4), UnknownObject);
}

TEST_CASE("tails sieves") {
    auto z = from_graded(kxy(3), 0, 3);
    CHECK(component_dims(tails_sieve(z, 0, 2)) == std::vector<std::size_t>{0, 0, 3, 4});
    CHECK(tails_sieve(z, 1, 1) == representable_sieve(z.category(), 1));
    CHECK(component_dims(tails_sieve(z, 1, 3)) == std::vector<std::size_t>{0, 0, 0, 3});
    CHECK_THROWS_AS(tails_sieve(z, 1, 4), PreconditionError);
    for (long m = 0; m <= 3; ++m)
        for (long n = m; n < 3; ++n) CHECK(sieve_contains(tails_sieve(z, m, n), tails_sieve(z, m, n + 1)));
    for (const auto& list : tails_system(z).basics)
        for (const auto& s : list) CHECK(validate_sieve(s).valid);
    CoveringOracle o(tails_system(z));
    CHECK(o.principal());
    CHECK(o.minimal_cover(0) == tails_sieve(z, 0, 3));
    CHECK(check_topology(tails_system(z)).valid);
    CHECK(check_topology(tails_system(from_graded(kx(4), 0, 4))).valid);
}

TEST_CASE("degree one generation") {
    CHECK(check_generated_in_degree_one(from_graded(kxy(3), 0, 3)));
    CHECK(check_generated_in_degree_one(from_graded(monomial_quotient(kxy(3), {{2, 0}}), 0, 3)));
    auto w = polynomial_algebra(F2, {"x"}, 4, {2});
    CHECK(degree_one_gaps(from_graded(w, 0, 4)) ==
          std::vector<std::pair<long, long>>{{2, 0}, {3, 1}, {4, 0}, {4, 2}});

    auto e = enlarged_a20();
    CHECK(validate_zalgebra(e).valid);
    CHECK(degree_one_gaps(e) == std::vector<std::pair<long, long>>{{2, 0}});

    auto d = diagonal(from_graded(kxy(3), 0, 3), from_graded(kxy(3, "u", "v"), 0, 3));
    CHECK(check_generated_in_degree_one(d.algebra));
}

TEST_CASE("diagonal and the cartesian product") {
    auto a = from_graded(kx(3), 0, 3), b = from_graded(kx(3, "y"), 0, 3);
    auto d = diagonal(a, b);
    for (long n = 0; n <= 3; ++n)
        for (long m = 0; m <= n; ++m) CHECK(d.algebra.piece_dim(n, m) == 1);
    CHECK(validate_functor(d.embedding).valid);
    CHECK(structurally_equal(*d.algebra.category(), *from_graded(kx(3, "t"), 0, 3).category()));

    for (long hi = 1; hi <= 3; ++hi) {
        for (auto [p, q] : {std::pair{kx(3), kx(3, "y")}, std::pair{kxy(3, "x0", "x1"), kxy(3, "y0", "y1")},
                            std::pair{kxy(3), monomial_quotient(kxy(3, "u", "v"), {{0, 2}})}}) {
            auto lhs = from_graded(segre(p, q), 0, hi);
            auto rhs = diagonal(from_graded(p, 0, hi), from_graded(q, 0, hi));
            CHECK(structurally_equal(*lhs.category(), *rhs.algebra.category()));
        }
    }

    // hom maps of the embedding are identities
    auto big = diagonal(from_graded(kxy(2), 0, 2), from_graded(kxy(2, "u", "v"), 0, 2));
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y) {
            const auto& h = big.embedding.hom_map(x, y);
            CHECK(h == Matrix::identity(F2, h.rows()));
        }

    // a factor concentrated in degree 0 kills every off-diagonal piece
    auto k0 = from_graded(polynomial_algebra(F2, {}, 3), 0, 3);
    auto dk = diagonal(from_graded(kxy(3), 0, 3), k0);
    for (long n = 0; n <= 3; ++n)
        for (long m = 0; m <= n; ++m) CHECK(dk.algebra.piece_dim(n, m) == (n == m ? 1u : 0u));

    CHECK_THROWS_AS(diagonal(from_graded(kx(3), 0, 3), from_graded(kx(3), 0, 2)), PreconditionError);
}

TEST_CASE("window restriction commutes with the constructions") {
    for (const auto& g : {kx(4), kxy(4), monomial_quotient(kxy(4), {{1, 1}})}) {
        auto big = from_graded(g, 0, 4);
        auto h = polynomial_algebra(F2, {"u", "v"}, 4);
        for (long hi = 0; hi < 4; ++hi) {
            std::vector<std::size_t> objs;
            std::vector<std::string> names;
            for (long n = 0; n <= hi; ++n) {
                objs.push_back(static_cast<std::size_t>(n));
                names.push_back(std::to_string(n));
            }
            auto small = from_graded(g, 0, hi);
            CHECK(structurally_equal(*full_subcategory(big.category(), objs, names), *small.category()));
            auto d_big = diagonal(big, from_graded(h, 0, 4)).algebra;
            CHECK(structurally_equal(*full_subcategory(d_big.category(), objs, names),
                                     *diagonal(small, from_graded(h, 0, hi)).algebra.category()));
            for (long m = 0; m <= hi; ++m)
                for (long n = m; n <= hi; ++n) {
                    auto dims = component_dims(tails_sieve(big, m, n));
                    dims.resize(static_cast<std::size_t>(hi + 1));
                    CHECK(dims == component_dims(tails_sieve(small, m, n)));
                }
            CHECK(check_generated_in_degree_one(small) == check_generated_in_degree_one(big));
        }
    }
}

TEST_CASE("delta functor") {
    auto a = from_graded(kxy(3), 0, 3), b = from_graded(kxy(3, "u", "v"), 0, 3);
    auto m = delta_functor(a, b);
    CHECK(validate_site_morphism(m).valid);
    CHECK(check_cocontinuous(m).verdict);
    CHECK(check_cocontinuous(delta_functor(from_graded(kx(3), 0, 3), from_graded(kx(3, "y"), 0, 3))).verdict);

    auto d = diagonal(a, b);
    CHECK(delta_generation_witnesses(d, a, b).valid);
    CHECK(delta_tails_images(d, a, b).valid);
    // expected component dims of the image of a(-,m)_{>=n}, from the piece dims alone
    for (long m = 0; m <= 3; ++m)
        for (long n = m; n <= 3; ++n) {
            auto img = image_sieve(d.embedding, tails_sieve(d.algebra, m, n));
            for (long l1 = 0; l1 <= 3; ++l1)
                for (long l2 = 0; l2 <= 3; ++l2) {
                    const std::size_t want = l1 >= n && l2 >= n ? a.piece_dim(l1, m) * b.piece_dim(l2, m) : 0;
                    CHECK(img.component(static_cast<std::size_t>(l1 * 4 + l2)).dim() == want);
                }
        }

    // without degree one generation the image of a tails sieve is too small
    auto e = enlarged_a20(), k = from_graded(kx(2), 0, 2);
    auto de = diagonal(e, k);
    CHECK_FALSE(delta_tails_images(de, e, k).valid);
    CHECK_FALSE(delta_generation_witnesses(de, e, k).valid);
}

TEST_CASE("LC for delta on windows") {
    auto rep = check_delta_LC_on_window(from_graded(kxy(3), 0, 3), from_graded(kxy(3, "u", "v"), 0, 3));
    CHECK(rep.verdict);
    CHECK(rep.notes.front() == "window-limited [0,3]");
    CHECK(rep.counterexamples.empty());

    auto rep2 = check_delta_LC_on_window(from_graded(kx(4), 0, 4), from_graded(kx(4, "y"), 0, 4));
    CHECK(rep2.verdict);

    auto w = polynomial_algebra(F2, {"x"}, 4, {2});
    CHECK_THROWS_AS(check_delta_LC_on_window(from_graded(w, 0, 3), from_graded(kx(4), 0, 3)), PreconditionError);
    CHECK_THROWS_AS(check_delta_LC_on_window(from_graded(kx(2), 0, 1), from_graded(kx(2), 0, 1)), PreconditionError);
    auto q = polynomial_algebra(Field::rationals(), {"x"}, 3);
    CHECK_THROWS_AS(check_delta_LC_on_window(from_graded(q, 0, 3), from_graded(q, 0, 3)), UnsupportedField);

    auto rows = window_sweep(kx(5), kxy(5), 0, 5);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.verdict);
        CHECK(r.counterexamples == 0);
    }
    CHECK(rows.back().hi == 5);
}

TEST_CASE("tails on the cartesian product against the pulled back tensor tails") {
    // exhaustive over every sieve of the window
    CHECK(pullback_matches_tails(from_graded(kx(3), 0, 3), from_graded(kx(3, "y"), 0, 3),
                                 from_graded(segre(kx(3), kx(3, "y")), 0, 3)));
    CHECK(pullback_matches_tails(from_graded(kxy(3), 0, 3), from_graded(kx(3, "u"), 0, 3),
                                 from_graded(segre(kxy(3), kx(3, "u")), 0, 3)));
    CHECK(pullback_matches_tails(from_graded(kxy(3), 0, 3), from_graded(monomial_quotient(kxy(3, "u", "v"), {{1, 0}}), 0, 3),
                                 from_graded(segre(kxy(3), monomial_quotient(kxy(3, "u", "v"), {{1, 0}})), 0, 3)));

    // larger windows: both sides are principal, so compare minimal covers
    auto a = from_graded(kxy(3), 0, 3), b = from_graded(kxy(3, "u", "v"), 0, 3);
    auto m = delta_functor(a, b);
    auto seg = from_graded(segre(kxy(3), kxy(3, "u", "v")), 0, 3);
    CoveringOracle src(tails_system(seg)), tgt(m.target);
    REQUIRE(src.principal());
    REQUIRE(tgt.principal());
    for (std::size_t x = 0; x < 4; ++x) {
        Sieve p = functor_preimage_sieve(m.functor, x, tgt.minimal_cover(m.functor.object(x)));
        CHECK(p.components() == src.minimal_cover(x).components());
        CHECK(tgt.covers(image_sieve(m.functor, Sieve(m.functor.source(), x, src.minimal_cover(x).components()))));
    }
}

TEST_CASE("tensor tails covers generate the tensor tails topology") {
    {
        auto a = from_graded(kx(3), 0, 3), b = from_graded(kx(3, "y"), 0, 3);
        auto ab = tensor_category(a.category(), b.category());
        CoveringOracle basics(tails_tensor_basics(a, b, ab), {}, Engine::exhaustive);
        CoveringOracle full(tensor_topology(ab, tails_system(a), tails_system(b)));
        CHECK(same_covering_sieves(basics, full));
        CHECK(check_topology(basics).valid);
    }
    {
        auto a = from_graded(kxy(3), 0, 3), b = from_graded(kxy(3, "u", "v"), 0, 3);
        auto ab = tensor_category(a.category(), b.category());
        auto t = tails_tensor_basics(a, b, ab);
        CHECK(up_closure_localizing(t));
        CoveringOracle basics(t), full(tensor_topology(ab, tails_system(a), tails_system(b)));
        REQUIRE(basics.principal());
        REQUIRE(full.principal());
        for (std::size_t x = 0; x < ab->size(); ++x) CHECK(basics.minimal_cover(x) == full.minimal_cover(x));
    }
}
