#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace distlab {

// All counts are exact: energies reach |E|^(4k), far past 128 bits at the
// sizes this library handles.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(Int base, unsigned exp) {
    Int r = 1;
    while (exp > 0) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline std::string to_decimal(const Int& x) { return x.str(); }

/// Renders "n" when the denominator is 1, "n/d" otherwise.
inline std::string to_decimal(const Rat& x) {
    if (boost::multiprecision::denominator(x) == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

}  // namespace distlab
