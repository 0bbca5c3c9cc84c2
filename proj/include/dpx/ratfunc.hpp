#ifndef DPX_RATFUNC_HPP
#define DPX_RATFUNC_HPP

#include <string>
#include <utility>
#include <vector>

#include "dpx/errors.hpp"
#include "dpx/rational.hpp"
#include "dpx/upoly.hpp"

namespace dpx {

/// Exact rational function of t over Rational, kept in canonical form:
/// the denominator is monic and nonzero, gcd(num, den) = 1, and the zero
/// function is 0/1. Equality is therefore structural.
class RatFunc {
public:
    RatFunc() : num_(), den_(UPoly::one()) {}
    RatFunc(Rational c) : num_(UPoly::constant(std::move(c))), den_(UPoly::one()) {}
    RatFunc(UPoly num) : num_(std::move(num)), den_(UPoly::one()) {}
    RatFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    static RatFunc t() { return RatFunc(UPoly::t()); }
    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Rational(1)); }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == UPoly::one(); }
    bool is_constant() const { return num_.is_constant() && is_polynomial(); }
    Rational constant_value() const {
        if (!is_constant()) throw DomainError("rational function is not constant: " + str());
        return num_.constant_value();
    }

    bool defined_at(const Rational& c) const { return den_.eval(c) != 0; }

    Rational eval(const Rational& c) const {
        const Rational d = den_.eval(c);
        if (d == 0) throw PoleError("pole at t = " + to_string(c) + " in " + str());
        return num_.eval(c) / d;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZeroError("division by zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    bool operator==(const RatFunc& o) const = default;

    /// Exact division by (t - 1). Requires f(1) = 0; a nonzero value at 1
    /// signals a violated (t-1)-divisibility congruence.
    RatFunc div_t_minus_1() const {
        if (den_.eval(Rational(1)) == 0)
            throw PoleError("pole at t = 1 in " + str());
        if (num_.eval(Rational(1)) != 0)
            throw DomainError("value at t = 1 is nonzero in " + str() +
                              "; (t-1)-divisibility congruence violated");
        return RatFunc(num_.divide_by_t_minus_1(), den_);
    }

    /// Quotient-rule derivative, canonicalized.
    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void canonicalize() {
        if (den_.is_zero()) throw DivisionByZeroError("zero denominator in rational function");
        if (num_.is_zero()) {
            den_ = UPoly::one();
            return;
        }
        UPoly g = UPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = UPoly::divmod(num_, g).first;
            den_ = UPoly::divmod(den_, g).first;
        }
        const Rational lead = den_.leading();
        if (lead != 1) {
            const Rational inv = Rational(1) / lead;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    UPoly num_, den_;
};

/// Lagrange interpolation through exact points: the unique polynomial of
/// degree < n with f(node_k) = value_k. Nodes must be pairwise distinct.
inline RatFunc lagrange_interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
    const std::size_t n = points.size();
    if (n == 0) throw DomainError("lagrange interpolation needs at least one point");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first)
                throw DomainError("duplicate interpolation node t = " + to_string(points[i].first));
    UPoly f;
    for (std::size_t k = 0; k < n; ++k) {
        UPoly basis = UPoly::one();
        Rational denom(1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            basis = basis * (UPoly::t() - UPoly::constant(points[i].first));
            denom *= points[k].first - points[i].first;
        }
        f = f + basis.scaled(points[k].second / denom);
    }
    return RatFunc(f);
}

} // namespace dpx

#endif
