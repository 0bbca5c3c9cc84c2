#ifndef DPX_RATIONAL_HPP
#define DPX_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "dpx/errors.hpp"

namespace dpx {

// Exact arbitrary-precision arithmetic. cpp_rational keeps the invariant
// gcd(|num|, den) = 1 with den >= 1, so equality is structural.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rational_div(const Rational& a, const Rational& b) {
    if (b == 0) throw DivisionByZeroError("division by zero rational");
    return a / b;
}

inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const Integer& n) { return n.str(); }

} // namespace dpx

#endif
