#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace distlab {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPrime : Error {
    explicit NonPrime(std::uint64_t p)
        : Error("p = " + std::to_string(p) + " is not an odd prime") {}
};

struct EvenCharacteristic : Error {
    EvenCharacteristic() : Error("characteristic 2 is out of scope (p must be odd)") {}
};

struct ReducibleModulus : Error {
    explicit ReducibleModulus(const std::string& what) : Error(what) {}
};

struct FieldMismatch : Error {
    FieldMismatch() : Error("operands belong to different fields") {}
    explicit FieldMismatch(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& what) : Error(what) {}
};

struct TooLargeAmbient : Error {
    explicit TooLargeAmbient(const std::string& what) : Error(what) {}
};

struct TooLargeGraph : Error {
    explicit TooLargeGraph(const std::string& what) : Error(what) {}
};

struct TooLargeForOracle : Error {
    explicit TooLargeForOracle(const std::string& what) : Error(what) {}
};

struct InvalidK : Error {
    explicit InvalidK(int k, int min_k)
        : Error("k = " + std::to_string(k) + " invalid (need k >= " + std::to_string(min_k) + ")") {}
};

struct GraphMismatch : Error {
    GraphMismatch() : Error("vertex multiset does not reference this graph") {}
    explicit GraphMismatch(const std::string& what) : Error(what) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

struct WrongDimension : Error {
    explicit WrongDimension(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace distlab
