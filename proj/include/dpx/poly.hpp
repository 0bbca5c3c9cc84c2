#ifndef DPX_POLY_HPP
#define DPX_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpx/errors.hpp"
#include "dpx/scalars.hpp"

namespace dpx {

/// A commutative polynomial ring, identified by its ordered generator names.
/// Rings are immutable and shared; two rings with equal generator lists are
/// interchangeable.
class PolyRing {
public:
    explicit PolyRing(std::vector<std::string> gens) : gens_(std::move(gens)) {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i] == "t")
                throw DomainError("'t' is reserved for the deformation parameter");
            for (std::size_t j = i + 1; j < gens_.size(); ++j)
                if (gens_[i] == gens_[j])
                    throw DomainError("duplicate generator name '" + gens_[i] + "'");
        }
    }

    std::size_t arity() const { return gens_.size(); }
    const std::string& gen_name(std::size_t i) const { return gens_[i]; }
    const std::vector<std::string>& gens() const { return gens_; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i] == name) return i;
        return std::nullopt;
    }

    bool operator==(const PolyRing& o) const { return gens_ == o.gens_; }

private:
    std::vector<std::string> gens_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

inline PolyRingPtr make_ring(std::vector<std::string> gens) {
    return std::make_shared<const PolyRing>(std::move(gens));
}

inline bool same_ring(const PolyRingPtr& a, const PolyRingPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Extend a ring by extra generators (appended after the existing ones).
inline PolyRingPtr extend_ring(const PolyRingPtr& base, const std::vector<std::string>& extra) {
    std::vector<std::string> gens = base->gens();
    for (const auto& g : extra) gens.push_back(g);
    return make_ring(std::move(gens));
}

using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Graded lexicographic order on exponent vectors (total degree first,
/// then lex with the declared generator order).
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const auto da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Sparse multivariate polynomial over the scalar field K. The term map
/// never stores zero coefficients, so equality is structural.
template <ScalarField K>
class Poly {
public:
    using Terms = std::map<Exponents, K, GrlexLess>;

    Poly() = default;
    explicit Poly(PolyRingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(PolyRingPtr ring) { return Poly(std::move(ring)); }

    static Poly constant(PolyRingPtr ring, K c) {
        Poly p(std::move(ring));
        if (!scalar_traits<K>::is_zero(c))
            p.terms_.emplace(Exponents(p.ring_->arity(), 0), std::move(c));
        return p;
    }

    static Poly generator(PolyRingPtr ring, std::size_t i) {
        Poly p(std::move(ring));
        Exponents e(p.ring_->arity(), 0);
        e.at(i) = 1;
        p.terms_.emplace(std::move(e), scalar_traits<K>::one());
        return p;
    }

    static Poly monomial(PolyRingPtr ring, Exponents e, K c) {
        Poly p(std::move(ring));
        if (e.size() != p.ring_->arity()) throw DomainError("exponent vector arity mismatch");
        if (!scalar_traits<K>::is_zero(c)) p.terms_.emplace(std::move(e), std::move(c));
        return p;
    }

    const PolyRingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
    }
    K constant_value() const {
        if (terms_.empty()) return scalar_traits<K>::zero();
        if (!is_constant()) throw DomainError("polynomial is not constant: " + str());
        return terms_.begin()->second;
    }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    void add_term(const Exponents& e, const K& c) {
        if (scalar_traits<K>::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (scalar_traits<K>::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r(a.ring_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e = ea;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    Poly scaled(const K& k) const {
        Poly r(ring_);
        if (scalar_traits<K>::is_zero(k)) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * k);
        return r;
    }
    Poly pow(std::uint32_t n) const {
        Poly r = constant(ring_, scalar_traits<K>::one());
        for (std::uint32_t i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    bool operator==(const Poly& o) const {
        if (!same_ring(ring_, o.ring_)) return false;
        return terms_ == o.terms_;
    }

    /// Partial derivative with respect to generator i.
    Poly partial(std::size_t i) const {
        Poly r(ring_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] -= 1;
            r.add_term(d, c * scalar_traits<K>::from_rational(Rational(e[i])));
        }
        return r;
    }

    /// Evaluate at generator images: the image ring is that of images[0]
    /// (all images must share one ring). images.size() must equal arity().
    Poly substitute(std::span<const Poly> images) const {
        if (images.size() != ring_->arity())
            throw DomainError("substitution image count mismatch");
        PolyRingPtr target = images.empty() ? ring_ : images[0].ring();
        Poly r(target);
        for (const auto& [e, c] : terms_) {
            Poly m = constant(target, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) m = m * images[i].pow(e[i]);
            r = r + m;
        }
        return r;
    }

    /// Coefficientwise map into another scalar field (ring generators kept).
    template <class K2, class Fn>
    Poly<K2> map_scalars(const PolyRingPtr& target, Fn&& fn) const {
        if (target->arity() != ring_->arity())
            throw DomainError("scalar map requires rings of equal arity");
        Poly<K2> r(target);
        for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
        return r;
    }

    /// Reinterpret in a ring whose generators start with this ring's ones.
    Poly lifted(const PolyRingPtr& bigger) const {
        if (bigger->arity() < ring_->arity())
            throw RingMismatchError("cannot lift into a smaller ring");
        for (std::size_t i = 0; i < ring_->arity(); ++i)
            if (bigger->gen_name(i) != ring_->gen_name(i))
                throw RingMismatchError("ring is not a prefix extension");
        Poly r(bigger);
        for (const auto& [e, c] : terms_) {
            Exponents big(bigger->arity(), 0);
            std::copy(e.begin(), e.end(), big.begin());
            r.terms_.emplace(std::move(big), c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        // largest terms first
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            append_term(out, e, c);
        }
        return out;
    }

private:
    void check_same(const Poly& o) const {
        if (!same_ring(ring_, o.ring_))
            throw RingMismatchError("polynomials live in different rings");
    }

    void append_term(std::string& out, const Exponents& e, const K& c) const {
        std::string cs = scalar_traits<K>::str(c);
        bool neg = false;
        if (!cs.empty() && cs[0] == '-' && !scalar_traits<K>::needs_parens(c)) {
            neg = true;
            cs = cs.substr(1);
        }
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const bool is_const_term = total_degree(e) == 0;
        const bool unit = !is_const_term && cs == "1";
        bool need_star = !unit;
        if (!unit) {
            if (scalar_traits<K>::needs_parens(c))
                out += "(" + scalar_traits<K>::str(c) + ")";
            else
                out += cs;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) out += "*";
            need_star = true;
            out += ring_->gen_name(i);
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
    }

    PolyRingPtr ring_;
    Terms terms_;
};

/// A derivation of the ring, stored by its generator images and extended to
/// all polynomials by linearity and the Leibniz rule.
template <ScalarField K>
class Derivation {
public:
    Derivation() = default;
    Derivation(PolyRingPtr ring, std::vector<Poly<K>> images)
        : ring_(std::move(ring)), images_(std::move(images)) {
        if (images_.size() != ring_->arity())
            throw DomainError("derivation needs exactly one image per generator");
        for (const auto& im : images_)
            if (!same_ring(im.ring(), ring_))
                throw RingMismatchError("derivation image in a different ring");
    }

    static Derivation zero(PolyRingPtr ring) {
        std::vector<Poly<K>> images(ring->arity(), Poly<K>::zero(ring));
        return Derivation(std::move(ring), std::move(images));
    }

    const PolyRingPtr& ring() const { return ring_; }
    const Poly<K>& image(std::size_t i) const { return images_[i]; }
    const std::vector<Poly<K>>& images() const { return images_; }

    bool is_zero() const {
        for (const auto& im : images_)
            if (!im.is_zero()) return false;
        return true;
    }

    Poly<K> apply(const Poly<K>& f) const {
        if (!same_ring(f.ring(), ring_))
            throw RingMismatchError("derivation applied to a foreign polynomial");
        Poly<K> r(ring_);
        for (std::size_t i = 0; i < ring_->arity(); ++i) {
            if (images_[i].is_zero()) continue;
            r = r + f.partial(i) * images_[i];
        }
        return r;
    }

    friend Derivation operator+(const Derivation& a, const Derivation& b) {
        a.check_same(b);
        std::vector<Poly<K>> images;
        images.reserve(a.images_.size());
        for (std::size_t i = 0; i < a.images_.size(); ++i)
            images.push_back(a.images_[i] + b.images_[i]);
        return Derivation(a.ring_, std::move(images));
    }
    friend Derivation operator-(const Derivation& a, const Derivation& b) {
        a.check_same(b);
        std::vector<Poly<K>> images;
        images.reserve(a.images_.size());
        for (std::size_t i = 0; i < a.images_.size(); ++i)
            images.push_back(a.images_[i] - b.images_[i]);
        return Derivation(a.ring_, std::move(images));
    }
    Derivation scaled(const K& k) const {
        std::vector<Poly<K>> images;
        images.reserve(images_.size());
        for (const auto& im : images_) images.push_back(im.scaled(k));
        return Derivation(ring_, std::move(images));
    }
    /// Module product f*d: the derivation a -> f * d(a).
    Derivation scaled_by(const Poly<K>& f) const {
        std::vector<Poly<K>> images;
        images.reserve(images_.size());
        for (const auto& im : images_) images.push_back(im * f);
        return Derivation(ring_, std::move(images));
    }

    bool operator==(const Derivation& o) const {
        return same_ring(ring_, o.ring_) && images_ == o.images_;
    }

    /// Commutator [d1,d2] = d1 after d2 minus d2 after d1, itself a derivation.
    static Derivation commutator(const Derivation& d1, const Derivation& d2) {
        d1.check_same(d2);
        std::vector<Poly<K>> images;
        images.reserve(d1.images_.size());
        for (std::size_t i = 0; i < d1.images_.size(); ++i)
            images.push_back(d1.apply(d2.images_[i]) - d2.apply(d1.images_[i]));
        return Derivation(d1.ring_, std::move(images));
    }

private:
    void check_same(const Derivation& o) const {
        if (!same_ring(ring_, o.ring_))
            throw RingMismatchError("derivations live on different rings");
    }

    PolyRingPtr ring_;
    std::vector<Poly<K>> images_;
};

} // namespace dpx

#endif
