#include "lsite/subspace.hpp"

#include "ops.hpp"

namespace lsite {

using detail::Access;

Subspace::Subspace(Field f, std::size_t ambient) : ambient_(ambient), basis_(f, 0, ambient) {}

Subspace Subspace::span(const Matrix& rows) {
    auto r = rref_with_pivots(rows);
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = std::move(r.reduced);
    s.pivots_ = std::move(r.pivots);
    return s;
}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Matrix>& vectors) {
    return span(Matrix::stack(f, ambient, vectors));
}

Subspace Subspace::full(Field f, std::size_t ambient) {
    return span(Matrix::identity(f, ambient));
}

Matrix Subspace::reduce(const Matrix& v) const {
    if (v.rows() != 1 || v.cols() != ambient_)
        throw DimensionMismatch("subspace: vector of length " + std::to_string(v.cols()) +
                                " in ambient " + std::to_string(ambient_));
    Matrix out = v;
    with_ops(field(), [&](auto ops) {
        auto& x = Access::data(out, ops);
        const auto& b = Access::data(basis_, ops);
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            auto c = x[pivots_[i]];
            if (ops.is_zero(c)) continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                x[j] = ops.sub(x[j], ops.mul(c, b[i * ambient_ + j]));
        }
        return 0;
    });
    return out;
}

bool Subspace::contains(const Matrix& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& s) const {
    if (s.ambient_ != ambient_) throw DimensionMismatch("contains: ambient dimensions differ");
    if (s.dim() > dim()) return false;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (!contains(s.basis_vector(i))) return false;
    return true;
}

Matrix Subspace::coordinates(const Matrix& v) const {
    if (!contains(v)) throw PreconditionError("coordinates: vector not in subspace");
    return v.select_cols(pivots_);
}

Subspace image(const Matrix& m) { return Subspace::span(m.transpose()); }

Subspace kernel(const Matrix& m) {
    auto r = rref_with_pivots(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Matrix> vecs;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Matrix v(m.field(), 1, n);
        v.set_int(0, f, 1);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            if (!r.reduced.is_zero_at(i, f)) v.set(0, r.pivots[i], -r.reduced.get(i, f));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(m.field(), n, vecs);
}

Subspace annihilator(const Subspace& s) {
    if (s.dim() == 0) return Subspace::full(s.field(), s.ambient_dim());
    return kernel(s.basis());
}

Subspace preimage(const Matrix& m, const Subspace& s) {
    if (s.ambient_dim() != m.rows())
        throw DimensionMismatch("preimage: subspace ambient " + std::to_string(s.ambient_dim()) +
                                " vs map codomain " + std::to_string(m.rows()));
    if (s.is_full()) return Subspace::full(m.field(), m.cols());
    Subspace ann = annihilator(s);
    return kernel(ann.basis() * m);
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("sum: ambient dimensions differ");
    if (!(a.field() == b.field())) throw FieldMismatch("sum: field mismatch");
    return Subspace::span(Matrix::stack(a.field(), a.ambient_dim(), {a.basis(), b.basis()}));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("intersect: ambient dimensions differ");
    if (!(a.field() == b.field())) throw FieldMismatch("intersect: field mismatch");
    if (a.is_zero() || b.is_zero()) return Subspace(a.field(), a.ambient_dim());
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    // Solve x*A = y*B: kernel of [A^T | -B^T], then map the x-part through A.
    const std::size_t da = a.dim(), db = b.dim(), n = a.ambient_dim();
    Matrix sys(a.field(), n, da + db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a.basis().is_zero_at(i, j)) sys.set(j, i, a.basis().get(i, j));
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!b.basis().is_zero_at(i, j)) sys.set(j, da + i, -b.basis().get(i, j));
    Subspace k = kernel(sys);
    std::vector<std::size_t> xs(da);
    for (std::size_t i = 0; i < da; ++i) xs[i] = i;
    Matrix coeffs = k.basis().select_cols(xs);
    return Subspace::span(coeffs * a.basis());
}

Subspace tensor(const Subspace& a, const Subspace& b) {
    if (!(a.field() == b.field())) throw FieldMismatch("tensor: field mismatch");
    return Subspace::span(a.basis().kron(b.basis()));
}

std::uint64_t checked_power(const Field& f, std::size_t d, std::uint64_t cap, const char* what) {
    if (!f.is_prime()) throw UnsupportedField(std::string(what) + ": enumeration needs a prime field");
    std::uint64_t p = f.characteristic(), total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (total > cap / p) {
            throw CapExceeded("cap-enum", cap,
                              std::to_string(p) + "^" + std::to_string(d) + " vectors (" + what + ")");
        }
        total *= p;
    }
    if (total > cap)
        throw CapExceeded("cap-enum", cap,
                          std::to_string(p) + "^" + std::to_string(d) + " vectors (" + what + ")");
    return total;
}

std::vector<Matrix> enumerate_vectors(const Subspace& s, std::uint64_t cap) {
    const Field& f = s.field();
    const std::uint64_t total = checked_power(f, s.dim(), cap, "enumerate_vectors");
    const std::uint32_t p = f.characteristic();
    const std::size_t d = s.dim(), n = s.ambient_dim();
    std::vector<Matrix> out;
    out.reserve(total);
    std::vector<std::uint32_t> coeff(d, 0);
    const auto& basis = Access::data(s.basis(), detail::ModOps{p});
    detail::ModOps ops{p};
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Matrix v(f, 1, n);
        auto& x = Access::data(v, ops);
        for (std::size_t i = 0; i < d; ++i) {
            if (!coeff[i]) continue;
            for (std::size_t j = 0; j < n; ++j)
                x[j] = ops.add(x[j], ops.mul(coeff[i], basis[i * n + j]));
        }
        out.push_back(std::move(v));
        // increment, last coefficient fastest
        for (std::size_t i = d; i-- > 0;) {
            if (++coeff[i] < p) break;
            coeff[i] = 0;
        }
    }
    return out;
}

std::uint64_t subspace_count(std::uint32_t p, std::size_t n, std::uint64_t limit) {
    // G(n,k) via G(n,k) = G(n-1,k-1) + p^k G(n-1,k), saturating.
    auto sat_add = [&](std::uint64_t a, std::uint64_t b) { return std::min(a + b, limit + 1); };
    auto sat_mul = [&](std::uint64_t a, std::uint64_t b) {
        if (a == 0 || b == 0) return std::uint64_t{0};
        return a > (limit + 1) / b ? limit + 1 : std::min(a * b, limit + 1);
    };
    std::vector<std::uint64_t> g(n + 1, 0);
    g[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t k = m; k >= 1; --k) {
            std::uint64_t pk = 1;
            for (std::size_t i = 0; i < k; ++i) pk = sat_mul(pk, p);
            g[k] = sat_add(g[k - 1], sat_mul(pk, g[k]));
        }
    }
    std::uint64_t total = 0;
    for (auto v : g) total = sat_add(total, v);
    return total;
}

}  // namespace lsite
