#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lsite/field.hpp"

namespace lsite {

namespace detail {
struct Access;
}

// Dense matrix over a Field. Vectors are 1 x n matrices; a map V -> W is a
// dim W x dim V matrix acting on coordinate columns.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols);

    static Matrix identity(Field f, std::size_t n);
    static Matrix from_ints(Field f, std::size_t rows, std::size_t cols,
                            const std::vector<std::int64_t>& entries);
    static Matrix from_rationals(Field f, std::size_t rows, std::size_t cols,
                                 const std::vector<Rational>& entries);
    static Matrix unit_row(Field f, std::size_t n, std::size_t i);
    static Matrix stack(Field f, std::size_t cols, const std::vector<Matrix>& blocks);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational get(std::size_t r, std::size_t c) const;
    std::int64_t get_int(std::size_t r, std::size_t c) const;  // prime fields only
    void set(std::size_t r, std::size_t c, const Rational& v);
    void set_int(std::size_t r, std::size_t c, std::int64_t v);
    bool is_zero_at(std::size_t r, std::size_t c) const;
    bool is_zero() const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(const Rational& s) const;
    Matrix transpose() const;
    Matrix kron(const Matrix& o) const;
    Matrix row(std::size_t r) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    // Reinterprets the entries in row-major order with a new shape.
    Matrix reshaped(std::size_t rows, std::size_t cols) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    // Canonical byte key, used for hashing and ordering.
    std::string key() const;
    std::string str() const;

private:
    friend struct detail::Access;
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> m_;
    std::vector<Rational> q_;
};

struct RrefResult {
    Matrix reduced;                   // nonzero rows only
    std::vector<std::size_t> pivots;  // pivot column of each row
};

RrefResult rref_with_pivots(const Matrix& m);
Matrix rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// map (k x n) applied to row vector v (1 x n); returns 1 x k.
Matrix apply(const Matrix& map, const Matrix& v);
// sum_i coeffs(0,i) * terms[i]; all terms share a shape (rows x cols).
Matrix lincomb(const Matrix& coeffs, const std::vector<Matrix>& terms, std::size_t rows,
               std::size_t cols);
// Row vector (1 x a*b) of the Kronecker product of two row vectors.
Matrix kron_rows(const Matrix& u, const Matrix& v);

}  // namespace lsite
