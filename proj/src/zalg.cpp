#include "lsite/zalg.hpp"

#include <map>

namespace lsite {

Matrix GradedAlgebra::multiply(std::size_t n, std::size_t m, const Matrix& x, const Matrix& y) const {
    if (n + m > bound) throw PreconditionError("graded algebra: product beyond the degree bound");
    return kron_rows(x, y) * table(n, m);
}

namespace {

std::size_t weighted_degree(const std::vector<std::size_t>& e, const std::vector<std::size_t>& w) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * w[i];
    return d;
}

// Exponent vectors of weighted degree d, lexicographically decreasing.
void monomials_of_degree(const std::vector<std::size_t>& w, std::size_t d, std::size_t var,
                         std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (var == w.size()) {
        if (d == 0) out.push_back(cur);
        return;
    }
    for (std::size_t e = d / w[var] + 1; e-- > 0;) {
        cur[var] = e;
        monomials_of_degree(w, d - e * w[var], var + 1, cur, out);
    }
    cur[var] = 0;
}

std::string monomial_label(const std::vector<std::string>& vars, const std::vector<std::size_t>& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        s += vars[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

GradedAlgebra from_monomials(const Field& f, const std::vector<std::string>& vars, const std::vector<std::size_t>& w,
                             std::size_t bound, std::vector<std::vector<std::vector<std::size_t>>> mons) {
    GradedAlgebra g;
    g.field = f;
    g.bound = bound;
    g.variables = vars;
    g.weights = w;
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(bound + 1);
    for (std::size_t d = 0; d <= bound; ++d) {
        g.dims.push_back(mons[d].size());
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < mons[d].size(); ++i) {
            index[d].emplace(mons[d][i], i);
            labels.push_back(monomial_label(vars, mons[d][i]));
        }
        g.labels.push_back(labels);
    }
    g.mult.resize((bound + 1) * (bound + 1));
    for (std::size_t n = 0; n <= bound; ++n)
        for (std::size_t m = 0; n + m <= bound; ++m) {
            Matrix t(f, g.dims[n] * g.dims[m], g.dims[n + m]);
            for (std::size_t i = 0; i < g.dims[n]; ++i)
                for (std::size_t j = 0; j < g.dims[m]; ++j) {
                    auto e = mons[n][i];
                    for (std::size_t v = 0; v < e.size(); ++v) e[v] += mons[m][j][v];
                    auto it = index[n + m].find(e);
                    if (it != index[n + m].end()) t.set_int(i * g.dims[m] + j, it->second, 1);
                }
            g.mult[n * (bound + 1) + m] = t;
        }
    g.unit = Matrix(f, 1, g.dims[0]);
    if (g.dims[0] > 0) g.unit.set_int(0, index[0].at(std::vector<std::size_t>(vars.size(), 0)), 1);
    g.monomials = std::move(mons);
    return g;
}

}  // namespace

GradedAlgebra polynomial_algebra(const Field& f, const std::vector<std::string>& variables, std::size_t bound,
                                 std::vector<std::size_t> weights) {
    if (weights.empty()) weights.assign(variables.size(), 1);
    if (weights.size() != variables.size()) throw InputError("polynomial_algebra: one weight per variable");
    for (auto w : weights)
        if (w == 0) throw InputError("polynomial_algebra: weights must be positive");
    std::vector<std::vector<std::vector<std::size_t>>> mons(bound + 1);
    std::vector<std::size_t> cur(variables.size(), 0);
    for (std::size_t d = 0; d <= bound; ++d) monomials_of_degree(weights, d, 0, cur, mons[d]);
    return from_monomials(f, variables, weights, bound, std::move(mons));
}

GradedAlgebra monomial_quotient(const GradedAlgebra& g, const std::vector<std::vector<std::size_t>>& relations) {
    if (g.monomials.empty()) throw PreconditionError("monomial_quotient: algebra has no monomial basis");
    for (const auto& r : relations) {
        if (r.size() != g.variables.size())
            throw InputError("relation out of range: expected " + std::to_string(g.variables.size()) + " exponents");
        if (weighted_degree(r, g.weights) > g.bound)
            throw InputError("relation out of range: degree " + std::to_string(weighted_degree(r, g.weights)) +
                             " exceeds the bound " + std::to_string(g.bound));
    }
    auto divides = [](const std::vector<std::size_t>& r, const std::vector<std::size_t>& e) {
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] > e[i]) return false;
        return true;
    };
    auto mons = g.monomials;
    for (auto& list : mons) {
        std::vector<std::vector<std::size_t>> kept;
        for (const auto& e : list) {
            bool struck = false;
            for (const auto& r : relations) struck = struck || divides(r, e);
            if (!struck) kept.push_back(e);
        }
        list = std::move(kept);
    }
    return from_monomials(g.field, g.variables, g.weights, g.bound, std::move(mons));
}

GradedAlgebra segre(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (!(a.field == b.field)) throw FieldMismatch("segre: field mismatch");
    if (a.bound != b.bound) throw PreconditionError("segre: degree bounds differ");
    GradedAlgebra g;
    g.field = a.field;
    g.bound = a.bound;
    const std::size_t d = a.bound;
    for (std::size_t n = 0; n <= d; ++n) {
        g.dims.push_back(a.dims[n] * b.dims[n]);
        std::vector<std::string> labels;
        for (const auto& x : a.labels[n])
            for (const auto& y : b.labels[n]) labels.push_back(x + "⊗" + y);
        g.labels.push_back(labels);
    }
    g.mult.resize((d + 1) * (d + 1));
    for (std::size_t n = 0; n <= d; ++n)
        for (std::size_t m = 0; n + m <= d; ++m) {
            const std::size_t am = a.dims[m], bm = b.dims[m];
            Matrix t(g.field, g.dims[n] * g.dims[m], g.dims[n + m]);
            for (std::size_t i1 = 0; i1 < a.dims[n]; ++i1)
                for (std::size_t i2 = 0; i2 < b.dims[n]; ++i2)
                    for (std::size_t j1 = 0; j1 < am; ++j1)
                        for (std::size_t j2 = 0; j2 < bm; ++j2) {
                            Matrix p = kron_rows(a.table(n, m).row(i1 * am + j1), b.table(n, m).row(i2 * bm + j2));
                            const std::size_t r = (i1 * b.dims[n] + i2) * g.dims[m] + j1 * bm + j2;
                            for (std::size_t c = 0; c < p.cols(); ++c)
                                if (!p.is_zero_at(0, c)) t.set(r, c, p.get(0, c));
                        }
            g.mult[n * (d + 1) + m] = t;
        }
    g.unit = kron_rows(a.unit, b.unit);
    return g;
}

ValidationReport validate_graded(const GradedAlgebra& g) {
    ValidationReport rep;
    if (g.dims.size() != g.bound + 1 || g.mult.size() != (g.bound + 1) * (g.bound + 1)) {
        rep.fail({"shape", {}, {}, "dimension list or table count does not match the bound"});
        return rep;
    }
    for (std::size_t n = 0; n <= g.bound; ++n)
        for (std::size_t m = 0; n + m <= g.bound; ++m) {
            const Matrix& t = g.table(n, m);
            if (t.rows() != g.dims[n] * g.dims[m] || t.cols() != g.dims[n + m])
                rep.fail({"shape", {std::to_string(n), std::to_string(m)}, {}, "multiplication table shape"});
        }
    if (!rep.valid) return rep;
    const Field& f = g.field;
    for (std::size_t n = 0; n <= g.bound; ++n)
        for (std::size_t i = 0; i < g.dims[n]; ++i) {
            Matrix e = Matrix::unit_row(f, g.dims[n], i);
            if (g.dims[0] == 0 || g.multiply(0, n, g.unit, e) != e || g.multiply(n, 0, e, g.unit) != e)
                rep.fail({"unit", {std::to_string(n)}, {{"e", e}}, "1 is not a two-sided unit"});
        }
    for (std::size_t n = 0; n <= g.bound; ++n)
        for (std::size_t m = 0; n + m <= g.bound; ++m)
            for (std::size_t l = 0; n + m + l <= g.bound; ++l)
                for (std::size_t i = 0; i < g.dims[n]; ++i)
                    for (std::size_t j = 0; j < g.dims[m]; ++j)
                        for (std::size_t k = 0; k < g.dims[l]; ++k) {
                            Matrix x = Matrix::unit_row(f, g.dims[n], i), y = Matrix::unit_row(f, g.dims[m], j),
                                   z = Matrix::unit_row(f, g.dims[l], k);
                            if (g.multiply(n + m, l, g.multiply(n, m, x, y), z) !=
                                g.multiply(n, m + l, x, g.multiply(m, l, y, z)))
                                rep.fail({"associativity",
                                          {std::to_string(n), std::to_string(m), std::to_string(l)},
                                          {{"x", x}, {"y", y}, {"z", z}},
                                          "(xy)z != x(yz)"});
                        }
    return rep;
}

bool operator==(const GradedAlgebra& x, const GradedAlgebra& y) {
    return x.field == y.field && x.bound == y.bound && x.dims == y.dims && x.mult == y.mult && x.unit == y.unit;
}

WindowedZAlgebra::WindowedZAlgebra(long lo, long hi, CategoryPtr c) : lo_(lo), hi_(hi), cat_(std::move(c)) {
    if (hi < lo) throw PreconditionError("window: hi < lo");
    if (cat_->size() != static_cast<std::size_t>(hi - lo + 1))
        throw DimensionMismatch("window: object count does not match [lo,hi]");
}

std::size_t WindowedZAlgebra::object(long n) const {
    if (n < lo_ || n > hi_) throw UnknownObject("object " + std::to_string(n) + " outside the window");
    return static_cast<std::size_t>(n - lo_);
}

std::size_t WindowedZAlgebra::piece_dim(long n, long m) const { return cat_->hom_dim(object(n), object(m)); }

bool WindowedZAlgebra::connected() const {
    for (long n = lo_; n <= hi_; ++n)
        if (piece_dim(n, n) != 1) return false;
    return true;
}

ValidationReport validate_zalgebra(const WindowedZAlgebra& z) {
    ValidationReport rep = validate_category(*z.category());
    for (long n = z.lo(); n <= z.hi(); ++n)
        for (long m = n + 1; m <= z.hi(); ++m)
            if (z.piece_dim(n, m) != 0)
                rep.fail({"positive-grading", {std::to_string(n), std::to_string(m)}, {}, "a(n,m) != 0 with n < m"});
    return rep;
}

WindowedZAlgebra from_graded(const GradedAlgebra& g, long lo, long hi) {
    if (hi < lo) throw PreconditionError("from_graded: hi < lo");
    if (static_cast<std::size_t>(hi - lo) > g.bound)
        throw PreconditionError("from_graded: window of height " + std::to_string(hi - lo) +
                                " is taller than the degree bound " + std::to_string(g.bound));
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::string> names;
    std::vector<std::size_t> dims(n * n, 0);
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        names.push_back(std::to_string(lo + static_cast<long>(x)));
        for (std::size_t y = 0; y <= x; ++y) {
            dims[x * n + y] = g.dims[x - y];
            labels[x * n + y] = g.labels[x - y];
        }
    }
    std::vector<Matrix> ids(n, g.unit);
    auto c = category_from_rule(
        g.field, names, dims, ids,
        [&g](std::size_t x, std::size_t y, std::size_t z, std::size_t i, std::size_t j) {
            // e_i in A_{y-z} times e_j in A_{x-y}
            return g.table(y - z, x - y).row(i * g.dims[x - y] + j);
        },
        labels);
    return WindowedZAlgebra(lo, hi, c);
}

Diagonal diagonal(const WindowedZAlgebra& a, const WindowedZAlgebra& b) {
    if (a.lo() != b.lo() || a.hi() != b.hi()) throw PreconditionError("diagonal: windows differ");
    auto ab = tensor_category(a.category(), b.category());
    const std::size_t n = a.category()->size();
    std::vector<std::size_t> objs;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        objs.push_back(i * n + i);
        names.push_back(a.category()->name(i));
    }
    auto c = full_subcategory(ab, objs, names);
    return {WindowedZAlgebra(a.lo(), a.hi(), c), ab, inclusion_functor(c, ab, objs)};
}

Sieve tails_sieve(const WindowedZAlgebra& z, long m, long n) {
    if (n < m || n > z.hi()) throw PreconditionError("tails sieve: need m <= n <= hi");
    const auto& c = z.category();
    const std::size_t mi = z.object(m);
    std::vector<Subspace> comps;
    for (long l = z.lo(); l <= z.hi(); ++l) {
        const std::size_t d = c->hom_dim(z.object(l), mi);
        comps.push_back(l >= n ? Subspace::full(c->field(), d) : Subspace(c->field(), d));
    }
    return Sieve(c, mi, comps);
}

CoverSystem tails_system(const WindowedZAlgebra& z, Mode mode) {
    CoverSystem t{z.category(), {}, mode, false};
    for (long m = z.lo(); m <= z.hi(); ++m) {
        std::vector<Sieve> list;
        for (long n = m; n <= z.hi(); ++n) list.push_back(tails_sieve(z, m, n));
        t.basics.push_back(std::move(list));
    }
    return t;
}

std::vector<std::pair<long, long>> degree_one_gaps(const WindowedZAlgebra& z) {
    const auto& c = *z.category();
    std::vector<std::pair<long, long>> out;
    for (long n = z.lo(); n <= z.hi(); ++n)
        for (long m = z.lo(); m + 1 < n; ++m) {
            const std::size_t x = z.object(n), y = z.object(m + 1), w = z.object(m);
            std::vector<Matrix> prods;
            for (std::size_t i = 0; i < c.hom_dim(y, w); ++i)
                for (std::size_t j = 0; j < c.hom_dim(x, y); ++j)
                    prods.push_back(c.compose(x, y, w, c.basis_vector(y, w, i), c.basis_vector(x, y, j)));
            if (Subspace::span(c.field(), c.hom_dim(x, w), prods).dim() != c.hom_dim(x, w)) out.emplace_back(n, m);
        }
    return out;
}

bool check_generated_in_degree_one(const WindowedZAlgebra& z) { return degree_one_gaps(z).empty(); }

SiteMorphism delta_functor(const WindowedZAlgebra& a, const WindowedZAlgebra& b, const Caps& caps) {
    auto d = diagonal(a, b);
    return {d.embedding, tails_system(d.algebra), tensor_topology(d.tensor, tails_system(a), tails_system(b), caps)};
}

ValidationReport delta_generation_witnesses(const Diagonal& d, const WindowedZAlgebra& a, const WindowedZAlgebra& b) {
    ValidationReport rep;
    const auto& ab = d.tensor;
    const std::size_t n = a.category()->size();
    for (long m1 = a.lo(); m1 <= a.hi(); ++m1)
        for (long m2 = a.lo(); m2 <= a.hi(); ++m2) {
            if (m1 == m2) continue;
            const std::size_t i = a.object(m1), j = b.object(m2);
            const long top = std::max(m1, m2);
            const std::size_t diag = a.object(top) * n + b.object(top);
            Sieve cover;
            std::vector<Generator> gens;
            if (m2 > m1) {
                // x (x) 1 with x in a(m2,m1)
                cover = tensor_sieve(ab, tails_sieve(a, m1, m2), representable_sieve(b.category(), j));
                const auto& ca = *a.category();
                for (std::size_t k = 0; k < ca.hom_dim(a.object(m2), i); ++k)
                    gens.push_back({diag, kron_rows(ca.basis_vector(a.object(m2), i, k), b.category()->identity(j))});
            } else {
                cover = tensor_sieve(ab, representable_sieve(a.category(), i), tails_sieve(b, m2, m1));
                const auto& cb = *b.category();
                for (std::size_t k = 0; k < cb.hom_dim(b.object(m1), j); ++k)
                    gens.push_back({diag, kron_rows(a.category()->identity(i), cb.basis_vector(b.object(m1), j, k))});
            }
            if (sieve_from_generators(ab, i * n + j, gens) != cover)
                rep.fail({"G-witness", {ab->name(i * n + j)}, {}, "the family out of the diagonal does not generate the cover"});
        }
    return rep;
}

ValidationReport delta_tails_images(const Diagonal& d, const WindowedZAlgebra& a, const WindowedZAlgebra& b) {
    ValidationReport rep;
    for (long m = a.lo(); m <= a.hi(); ++m)
        for (long n = m; n <= a.hi(); ++n) {
            Sieve img = image_sieve(d.embedding, tails_sieve(d.algebra, m, n));
            Sieve expected = tensor_sieve(d.tensor, tails_sieve(a, m, n), tails_sieve(b, m, n));
            if (img != expected)
                rep.fail({"tails-image", {std::to_string(m), std::to_string(n)}, {},
                          "Delta of the tails sieve differs from the tensor of tails sieves"});
        }
    return rep;
}

PropertyReport check_delta_LC_on_window(const WindowedZAlgebra& a, const WindowedZAlgebra& b, const Caps& caps) {
    if (!a.category()->field().is_prime())
        throw UnsupportedField("check_delta_LC_on_window: needs a prime field");
    if (a.lo() != b.lo() || a.hi() != b.hi()) throw PreconditionError("check_delta_LC_on_window: windows differ");
    if (a.hi() - a.lo() < 2) throw PreconditionError("check_delta_LC_on_window: window height must be at least 2");
    if (!check_generated_in_degree_one(a) || !check_generated_in_degree_one(b))
        throw PreconditionError("check_delta_LC_on_window: a factor is not generated in degree 1");
    auto d = diagonal(a, b);
    SiteMorphism m{d.embedding, tails_system(d.algebra),
                   tensor_topology(d.tensor, tails_system(a), tails_system(b), caps)};
    PropertyReport rep = check_LC(SiteOracles(m, caps));
    const std::string window = "[" + std::to_string(a.lo()) + "," + std::to_string(a.hi()) + "]";
    rep.notes.insert(rep.notes.begin(), "window-limited " + window);
    auto w = delta_generation_witnesses(d, a, b);
    for (auto& f : w.violations) rep.fail(std::move(f));
    rep.notes.push_back(std::string("G witness family x (x) 1: ") + (w.valid ? "pass" : "fail"));
    auto t = delta_tails_images(d, a, b);
    for (auto& f : t.violations) rep.fail(std::move(f));
    rep.notes.push_back(std::string("Delta of tails sieves: ") + (t.valid ? "pass" : "fail"));
    return rep;
}

std::vector<SweepRow> window_sweep(const GradedAlgebra& a, const GradedAlgebra& b, long lo, long hi_max,
                                   const Caps& caps) {
    std::vector<SweepRow> rows;
    for (long hi = lo + 2; hi <= hi_max; ++hi) {
        auto rep = check_delta_LC_on_window(from_graded(a, lo, hi), from_graded(b, lo, hi), caps);
        rows.push_back({lo, hi, rep.verdict, rep.counterexamples.size()});
    }
    return rows;
}

}  // namespace lsite
