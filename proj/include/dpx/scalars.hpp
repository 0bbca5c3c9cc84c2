#ifndef DPX_SCALARS_HPP
#define DPX_SCALARS_HPP

#include <concepts>
#include <string>

#include "dpx/ratfunc.hpp"
#include "dpx/rational.hpp"

namespace dpx {

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool has_parameter = false;
    static const char* name() { return "rational"; }
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational from_rational(const Rational& r) { return r; }
    static std::string str(const Rational& x) { return to_string(x); }
    static Rational div(const Rational& a, const Rational& b) { return rational_div(a, b); }
    // true when printing c*mono needs parentheses around c
    static bool needs_parens(const Rational& x) { return denominator(x) != 1; }
};

template <>
struct scalar_traits<RatFunc> {
    static constexpr bool has_parameter = true;
    static const char* name() { return "ratfunc"; }
    static RatFunc zero() { return RatFunc::zero(); }
    static RatFunc one() { return RatFunc::one(); }
    static bool is_zero(const RatFunc& x) { return x.is_zero(); }
    static RatFunc from_rational(const Rational& r) { return RatFunc(r); }
    static std::string str(const RatFunc& x) { return x.str(); }
    static RatFunc div(const RatFunc& a, const RatFunc& b) { return a / b; }
    static bool needs_parens(const RatFunc& x) {
        if (!x.is_polynomial()) return true;
        if (!x.is_constant()) return true;
        return denominator(x.constant_value()) != 1;
    }
};

template <class K>
concept ScalarField = requires(const K& a, const K& b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a == b } -> std::convertible_to<bool>;
    { scalar_traits<K>::zero() } -> std::convertible_to<K>;
    { scalar_traits<K>::one() } -> std::convertible_to<K>;
};

} // namespace dpx

#endif
