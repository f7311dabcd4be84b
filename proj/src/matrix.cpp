#include "lsite/matrix.hpp"

#include <sstream>

#include "lsite/errors.hpp"
#include "ops.hpp"

namespace lsite {

using detail::Access;

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {
    if (f.is_prime())
        m_.assign(rows * cols, 0);
    else
        q_.assign(rows * cols, Rational(0));
}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set_int(i, i, 1);
    return m;
}

Matrix Matrix::from_ints(Field f, std::size_t rows, std::size_t cols,
                         const std::vector<std::int64_t>& entries) {
    if (entries.size() != rows * cols)
        throw DimensionMismatch("from_ints: expected " + std::to_string(rows * cols) + " entries");
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) m.set_int(i / cols, i % cols, entries[i]);
    return m;
}

Matrix Matrix::from_rationals(Field f, std::size_t rows, std::size_t cols,
                              const std::vector<Rational>& entries) {
    if (entries.size() != rows * cols)
        throw DimensionMismatch("from_rationals: expected " + std::to_string(rows * cols) +
                                " entries");
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) m.set(i / cols, i % cols, entries[i]);
    return m;
}

Matrix Matrix::unit_row(Field f, std::size_t n, std::size_t i) {
    Matrix m(f, 1, n);
    m.set_int(0, i, 1);
    return m;
}

Matrix Matrix::stack(Field f, std::size_t cols, const std::vector<Matrix>& blocks) {
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.rows() == 0) continue;
        if (b.cols() != cols) throw DimensionMismatch("stack: column count differs");
        if (!(b.field() == f)) throw FieldMismatch("stack: field differs");
        rows += b.rows();
    }
    Matrix out(f, rows, cols);
    return with_ops(f, [&](auto ops) {
        auto& dst = Access::data(out, ops);
        std::size_t at = 0;
        for (const auto& b : blocks) {
            if (b.rows() == 0) continue;
            const auto& src = Access::data(b, ops);
            std::copy(src.begin(), src.end(), dst.begin() + static_cast<std::ptrdiff_t>(at));
            at += src.size();
        }
        return out;
    });
}

Rational Matrix::get(std::size_t r, std::size_t c) const {
    if (field_.is_prime()) return Rational(m_[r * cols_ + c]);
    return q_[r * cols_ + c];
}

std::int64_t Matrix::get_int(std::size_t r, std::size_t c) const {
    if (!field_.is_prime()) throw UnsupportedField("get_int over the rationals");
    return m_[r * cols_ + c];
}

void Matrix::set(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw DimensionMismatch("set: index out of range");
    if (field_.is_prime())
        m_[r * cols_ + c] = field_.reduce(v);
    else
        q_[r * cols_ + c] = v;
}

void Matrix::set_int(std::size_t r, std::size_t c, std::int64_t v) {
    if (r >= rows_ || c >= cols_) throw DimensionMismatch("set: index out of range");
    if (field_.is_prime())
        m_[r * cols_ + c] = field_.reduce(v);
    else
        q_[r * cols_ + c] = Rational(v);
}

bool Matrix::is_zero_at(std::size_t r, std::size_t c) const {
    if (field_.is_prime()) return m_[r * cols_ + c] == 0;
    return q_[r * cols_ + c] == 0;
}

bool Matrix::is_zero() const {
    if (field_.is_prime()) {
        for (auto v : m_)
            if (v) return false;
        return true;
    }
    for (const auto& v : q_)
        if (v != 0) return false;
    return true;
}

namespace {

void require_same(const Matrix& a, const Matrix& b, const char* what) {
    if (!(a.field() == b.field())) throw FieldMismatch(std::string(what) + ": field mismatch");
}

}  // namespace

Matrix Matrix::operator+(const Matrix& o) const {
    require_same(*this, o, "add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("add: shape mismatch");
    Matrix out = *this;
    with_ops(field_, [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& s = Access::data(o, ops);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = ops.add(d[i], s[i]);
        return 0;
    });
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require_same(*this, o, "sub");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("sub: shape mismatch");
    Matrix out = *this;
    with_ops(field_, [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& s = Access::data(o, ops);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = ops.sub(d[i], s[i]);
        return 0;
    });
    return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require_same(*this, o, "mul");
    if (cols_ != o.rows_)
        throw DimensionMismatch("mul: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                " times " + std::to_string(o.rows_) + "x" +
                                std::to_string(o.cols_));
    Matrix out(field_, rows_, o.cols_);
    with_ops(field_, [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& a = Access::data(*this, ops);
        const auto& b = Access::data(o, ops);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const auto& aik = a[i * cols_ + k];
                if (ops.is_zero(aik)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    d[i * o.cols_ + j] = ops.add(d[i * o.cols_ + j], ops.mul(aik, b[k * o.cols_ + j]));
            }
        return 0;
    });
    return out;
}

Matrix Matrix::scaled(const Rational& s) const {
    Matrix out = *this;
    with_ops(field_, [&](auto ops) {
        auto c = ops.from_rational(field_, s);
        for (auto& v : Access::data(out, ops)) v = ops.mul(v, c);
        return 0;
    });
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(field_, cols_, rows_);
    with_ops(field_, [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& s = Access::data(*this, ops);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) d[j * rows_ + i] = s[i * cols_ + j];
        return 0;
    });
    return out;
}

Matrix Matrix::kron(const Matrix& o) const {
    require_same(*this, o, "kron");
    Matrix out(field_, rows_ * o.rows_, cols_ * o.cols_);
    with_ops(field_, [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& a = Access::data(*this, ops);
        const auto& b = Access::data(o, ops);
        const std::size_t oc = cols_ * o.cols_;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const auto& aij = a[i * cols_ + j];
                if (ops.is_zero(aij)) continue;
                for (std::size_t k = 0; k < o.rows_; ++k)
                    for (std::size_t l = 0; l < o.cols_; ++l)
                        d[(i * o.rows_ + k) * oc + j * o.cols_ + l] =
                            ops.mul(aij, b[k * o.cols_ + l]);
            }
        return 0;
    });
    return out;
}

Matrix Matrix::row(std::size_t r) const { return select_rows({r}); }

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix out(field_, idx.size(), cols_);
    with_ops(field_, [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& s = Access::data(*this, ops);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= rows_) throw DimensionMismatch("select_rows: index out of range");
            std::copy_n(s.begin() + static_cast<std::ptrdiff_t>(idx[i] * cols_), cols_,
                        d.begin() + static_cast<std::ptrdiff_t>(i * cols_));
        }
        return 0;
    });
    return out;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    Matrix out(field_, rows_, idx.size());
    with_ops(field_, [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& s = Access::data(*this, ops);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) {
                if (idx[j] >= cols_) throw DimensionMismatch("select_cols: index out of range");
                d[i * idx.size() + j] = s[i * cols_ + idx[j]];
            }
        return 0;
    });
    return out;
}

Matrix Matrix::reshaped(std::size_t rows, std::size_t cols) const {
    if (rows * cols != rows_ * cols_) throw DimensionMismatch("reshape: size differs");
    Matrix out = *this;
    out.rows_ = rows;
    out.cols_ = cols;
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && m_ == o.m_ && q_ == o.q_;
}

std::string Matrix::key() const {
    std::string k;
    k.reserve(16 + m_.size() * 2);
    k += std::to_string(rows_);
    k.push_back('x');
    k += std::to_string(cols_);
    k.push_back(':');
    if (field_.is_prime()) {
        for (auto v : m_) {
            if (field_.characteristic() < 256) {
                k.push_back(static_cast<char>(v));
            } else {
                k += std::to_string(v);
                k.push_back(',');
            }
        }
    } else {
        for (const auto& v : q_) {
            k += to_string(v);
            k.push_back(',');
        }
    }
    return k;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << to_string(get(i, j));
        }
    }
    os << "]";
    return os.str();
}

RrefResult rref_with_pivots(const Matrix& m) {
    return with_ops(m.field(), [&](auto ops) {
        using T = typename decltype(ops)::T;
        const std::size_t R = m.rows(), C = m.cols();
        std::vector<T> a = Access::data(m, ops);
        std::vector<std::size_t> pivots;
        std::size_t pr = 0;
        for (std::size_t c = 0; c < C && pr < R; ++c) {
            std::size_t sel = R;
            for (std::size_t r = pr; r < R; ++r)
                if (!ops.is_zero(a[r * C + c])) {
                    sel = r;
                    break;
                }
            if (sel == R) continue;
            if (sel != pr)
                for (std::size_t j = 0; j < C; ++j) std::swap(a[sel * C + j], a[pr * C + j]);
            T inv = ops.inv(a[pr * C + c]);
            for (std::size_t j = c; j < C; ++j) a[pr * C + j] = ops.mul(a[pr * C + j], inv);
            for (std::size_t r = 0; r < R; ++r) {
                if (r == pr || ops.is_zero(a[r * C + c])) continue;
                T f = a[r * C + c];
                for (std::size_t j = c; j < C; ++j)
                    a[r * C + j] = ops.sub(a[r * C + j], ops.mul(f, a[pr * C + j]));
            }
            pivots.push_back(c);
            ++pr;
        }
        Matrix out(m.field(), pr, C);
        auto& d = Access::data(out, ops);
        std::copy_n(a.begin(), pr * C, d.begin());
        return RrefResult{std::move(out), std::move(pivots)};
    });
}

Matrix rref(const Matrix& m) { return rref_with_pivots(m).reduced; }

std::size_t rank(const Matrix& m) { return rref_with_pivots(m).pivots.size(); }

Matrix apply(const Matrix& map, const Matrix& v) {
    if (v.rows() != 1 || v.cols() != map.cols())
        throw DimensionMismatch("apply: vector of length " + std::to_string(v.cols()) +
                                " to map with " + std::to_string(map.cols()) + " columns");
    if (!(map.field() == v.field())) throw FieldMismatch("apply: field mismatch");
    Matrix out(map.field(), 1, map.rows());
    with_ops(map.field(), [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& a = Access::data(map, ops);
        const auto& x = Access::data(v, ops);
        const std::size_t C = map.cols();
        for (std::size_t j = 0; j < C; ++j) {
            if (ops.is_zero(x[j])) continue;
            for (std::size_t i = 0; i < map.rows(); ++i)
                d[i] = ops.add(d[i], ops.mul(a[i * C + j], x[j]));
        }
        return 0;
    });
    return out;
}

Matrix lincomb(const Matrix& coeffs, const std::vector<Matrix>& terms, std::size_t rows,
               std::size_t cols) {
    if (coeffs.rows() != 1 || coeffs.cols() != terms.size())
        throw DimensionMismatch("lincomb: coefficient count differs from term count");
    Matrix out(coeffs.field(), rows, cols);
    with_ops(coeffs.field(), [&](auto ops) {
        auto& d = Access::data(out, ops);
        const auto& c = Access::data(coeffs, ops);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (ops.is_zero(c[i])) continue;
            if (terms[i].rows() != rows || terms[i].cols() != cols)
                throw DimensionMismatch("lincomb: term shape differs");
            const auto& t = Access::data(terms[i], ops);
            for (std::size_t k = 0; k < d.size(); ++k) d[k] = ops.add(d[k], ops.mul(c[i], t[k]));
        }
        return 0;
    });
    return out;
}

Matrix kron_rows(const Matrix& u, const Matrix& v) { return u.kron(v); }

}  // namespace lsite
