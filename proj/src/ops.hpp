#pragma once

// Internal arithmetic kernels shared by the exact linear algebra sources.

#include <utility>
#include <vector>

#include "lsite/matrix.hpp"

namespace lsite::detail {

struct ModOps {
    std::uint32_t p;
    using T = std::uint32_t;

    T add(T a, T b) const {
        T s = a + b;
        return s >= p ? s - p : s;
    }
    T sub(T a, T b) const { return a >= b ? a - b : a + p - b; }
    T mul(T a, T b) const {
        return static_cast<T>(static_cast<std::uint64_t>(a) * b % p);
    }
    T neg(T a) const { return a ? p - a : 0; }
    T inv(T a) const {
        std::int64_t t = 0, nt = 1, r = p, nr = a;
        while (nr) {
            std::int64_t q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        if (t < 0) t += p;
        return static_cast<T>(t);
    }
    bool is_zero(T a) const { return a == 0; }
    T from_rational(const Field& f, const Rational& q) const { return f.reduce(q); }
};

struct QOps {
    using T = Rational;

    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    T inv(const T& a) const { return T(1) / a; }
    bool is_zero(const T& a) const { return a == 0; }
    T from_rational(const Field&, const Rational& q) const { return q; }
};

struct Access {
    static std::vector<std::uint32_t>& data(Matrix& m, ModOps) { return m.m_; }
    static const std::vector<std::uint32_t>& data(const Matrix& m, ModOps) { return m.m_; }
    static std::vector<Rational>& data(Matrix& m, QOps) { return m.q_; }
    static const std::vector<Rational>& data(const Matrix& m, QOps) { return m.q_; }
};

template <class Fn>
decltype(auto) with_ops(const Field& f, Fn&& fn) {
    if (f.is_prime()) return fn(ModOps{f.characteristic()});
    return fn(QOps{});
}

}  // namespace lsite::detail

namespace lsite {
using detail::with_ops;
}
