#ifndef DPX_UPOLY_HPP
#define DPX_UPOLY_HPP

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "dpx/errors.hpp"
#include "dpx/rational.hpp"

namespace dpx {

/// Dense univariate polynomial in the deformation parameter t over Rational.
/// Coefficients are stored ascending by power with no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(Rational c) {
        if (c != 0) coeffs_.push_back(std::move(c));
    }
    UPoly(std::initializer_list<Rational> ascending) : coeffs_(ascending) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly one() { return UPoly(Rational(1)); }
    static UPoly t() { return UPoly{Rational(0), Rational(1)}; }
    static UPoly constant(Rational c) { return UPoly(std::move(c)); }

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& coeff(std::size_t i) const {
        static const Rational kZero(0);
        return i < coeffs_.size() ? coeffs_[i] : kZero;
    }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

    bool is_constant() const { return coeffs_.size() <= 1; }
    Rational constant_value() const { return coeffs_.empty() ? Rational(0) : coeffs_[0]; }

    Rational eval(const Rational& c) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * c + *it;
        return acc;
    }

    UPoly derivative() const {
        UPoly d;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            d.coeffs_.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
        d.trim();
        return d;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeff(i) + b.coeff(i);
        r.trim();
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeff(i) - b.coeff(i);
        r.trim();
        return r;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        UPoly r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        r.trim();
        return r;
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    UPoly scaled(const Rational& c) const {
        if (c == 0) return UPoly();
        UPoly r = *this;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    bool operator==(const UPoly& o) const = default;

    /// Exact Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
        UPoly q, r = a;
        const int db = b.degree();
        const Rational lb = b.leading();
        while (!r.is_zero() && r.degree() >= db) {
            const int shift = r.degree() - db;
            const Rational f = r.leading() / lb;
            if (q.coeffs_.size() < static_cast<std::size_t>(shift) + 1)
                q.coeffs_.resize(shift + 1, Rational(0));
            q.coeffs_[shift] += f;
            for (int i = 0; i <= db; ++i)
                r.set(i + shift, r.coeff(i + shift) - f * b.coeff(i));
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return scaled(Rational(1) / leading());
    }

    /// Exact division by (t - 1); requires eval(1) == 0.
    UPoly divide_by_t_minus_1() const {
        if (eval(Rational(1)) != 0)
            throw DomainError("polynomial does not vanish at t = 1");
        if (is_zero()) return UPoly();
        // synthetic division by the root 1
        std::vector<Rational> q(coeffs_.size() - 1, Rational(0));
        Rational carry(0);
        for (std::size_t i = coeffs_.size(); i-- > 1;) {
            carry = carry + coeffs_[i];
            q[i - 1] = carry;
        }
        UPoly r;
        r.coeffs_ = std::move(q);
        r.trim();
        return r;
    }

    /// Plain text form, descending powers: "5*t - 5", "t^2 + 1", "0".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const Rational& c = coeffs_[k];
            if (c == 0) continue;
            const bool neg = c < 0;
            const Rational mag = neg ? Rational(-c) : c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            const bool unit = (mag == 1) && k > 0;
            if (!unit) out += to_string(mag);
            if (k > 0) {
                if (!unit) out += "*";
                out += "t";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void set(std::size_t i, Rational v) {
        if (coeffs_.size() < i + 1) coeffs_.resize(i + 1, Rational(0));
        coeffs_[i] = std::move(v);
    }
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

} // namespace dpx

#endif
