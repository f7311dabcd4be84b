#include "lsite/field.hpp"

#include "lsite/errors.hpp"

namespace lsite {

namespace {

bool is_prime_number(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (!is_prime_number(p)) throw InputError("not a prime: " + std::to_string(p));
    if (p >= (1u << 31)) throw InputError("prime too large: " + std::to_string(p));
    Field f;
    f.kind_ = Kind::prime;
    f.p_ = p;
    return f;
}

Field Field::rationals() {
    Field f;
    f.kind_ = Kind::rationals;
    f.p_ = 0;
    return f;
}

std::string Field::name() const {
    return kind_ == Kind::prime ? "F_" + std::to_string(p_) : "Q";
}

std::uint32_t Field::reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t Field::reduce(const Rational& q) const {
    BigInt num = boost::multiprecision::numerator(q) % p_;
    BigInt den = boost::multiprecision::denominator(q) % p_;
    if (num < 0) num += p_;
    if (den == 0) throw InputError("denominator divisible by " + std::to_string(p_));
    auto n = num.convert_to<std::uint32_t>();
    auto d = den.convert_to<std::uint32_t>();
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) * inverse(d) % p_);
}

std::uint32_t Field::inverse(std::uint32_t a) const {
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p_;
    std::uint32_t e = p_ - 2;
    while (e) {
        if (e & 1) result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

Rational parse_rational(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("malformed rational '" + text + "'");
    }
}

std::string to_string(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1)
        return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

}  // namespace lsite
