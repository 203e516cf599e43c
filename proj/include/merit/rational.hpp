#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace merit {

// Exact rational scalar used wherever floating point would lose information:
// gadget instances, circumcircle certificates, zero-error checks.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Doubles are dyadic rationals, so this conversion is exact.
inline Rat to_rational(double x) { return Rat(x); }
inline Rat to_rational(std::int64_t x) { return Rat(x); }
inline Rat to_rational(int x) { return Rat(x); }
inline const Rat& to_rational(const Rat& x) { return x; }

inline double to_double(const Rat& x) { return static_cast<double>(x); }

inline Rat make_rational(std::int64_t num, std::int64_t den) {
    return Rat(BigInt(num), BigInt(den));
}

inline std::string num_string(const Rat& x) { return numerator(x).str(); }
inline std::string den_string(const Rat& x) { return denominator(x).str(); }

}  // namespace merit
