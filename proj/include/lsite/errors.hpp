#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lsite {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    using Error::Error;
};

class UnsupportedField : public Error {
public:
    using Error::Error;
};

class UnknownObject : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class InputError : public Error {
public:
    using Error::Error;
};

// Raised when an exhaustive quantifier would exceed a configured bound.
class CapExceeded : public Error {
public:
    CapExceeded(std::string cap, std::uint64_t limit, std::string requested)
        : Error("cap '" + cap + "' exceeded: requested " + requested + ", limit " +
                std::to_string(limit)),
          cap_(std::move(cap)), limit_(limit), requested_(std::move(requested)) {}

    const std::string& cap() const { return cap_; }
    std::uint64_t limit() const { return limit_; }
    const std::string& requested() const { return requested_; }

private:
    std::string cap_;
    std::uint64_t limit_;
    std::string requested_;
};

struct Caps {
    std::uint64_t enum_vectors = std::uint64_t{1} << 20;  // vectors per enumerate_vectors call
    std::uint64_t subspaces = std::uint64_t{1} << 16;     // sieves / submodules per enumeration
    std::uint64_t submodule_total_dim = 8;                // gabriel / hull searches
    std::uint64_t module_candidates = std::uint64_t{1} << 20;  // action tables tried by enumerate_modules
};

}  // namespace lsite
