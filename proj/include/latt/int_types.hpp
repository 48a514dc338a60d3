#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "latt/errors.hpp"

namespace latt {

// All lattice arithmetic is exact: arbitrary-precision integers and rationals,
// no floating point anywhere in the library.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rat& q) { return den(q) == 1; }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

/// floor(a/b) for b != 0 (truncating division rounds toward zero, so fix up).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return ceil_div(num(q), den(q)); }

/// Largest integer s with s*s <= a.  Requires a >= 0.
inline Int isqrt(const Int& a) {
    if (a < 0) throw domain_error("isqrt of negative value");
    return boost::multiprecision::sqrt(a);
}

/// Nearest integer to a/b, ties rounded toward +infinity.  Requires b != 0.
inline Int round_div(const Int& a, const Int& b) {
    Int bb = b < 0 ? -b : b;
    Int aa = b < 0 ? -a : a;
    return floor_div(2 * aa + bb, 2 * bb);
}

inline std::string to_string(const Int& a) { return a.str(); }

} // namespace latt
