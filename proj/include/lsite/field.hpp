#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lsite {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class Field {
public:
    enum class Kind { prime, rationals };

    Field() = default;  // F_2

    static Field prime(std::uint32_t p);
    static Field rationals();

    Kind kind() const { return kind_; }
    bool is_prime() const { return kind_ == Kind::prime; }
    std::uint32_t characteristic() const { return kind_ == Kind::prime ? p_ : 0; }
    std::string name() const;

    std::uint32_t reduce(std::int64_t v) const;
    std::uint32_t reduce(const Rational& q) const;
    std::uint32_t inverse(std::uint32_t a) const;

    bool operator==(const Field&) const = default;

private:
    Kind kind_ = Kind::prime;
    std::uint32_t p_ = 2;
};

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace lsite
