#ifndef DPX_NCALG_HPP
#define DPX_NCALG_HPP

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dpx/poly.hpp"
#include "dpx/ratfunc.hpp"

namespace dpx {

/// Symbols of a presentation: 0..n-1 are the base generators in ring order,
/// n is y1 and n+1 is y2.
using Word = std::vector<std::size_t>;

/// A left double Ore extension presentation of a base ring:
///   y2 y1 = p11 y1^2 + p12 y1 y2 + tau1 y1 + tau2 y2 + tau0
///   y_i a = sigma_i1(a) y1 + sigma_i2(a) y2 + delta_i(a)
/// with sigma and delta stored by generator images and extended one
/// generator at a time by the rewriting itself. The base ring is the
/// commutative polynomial ring unless base_rels installs its own rewrite
/// rule g_hi * g_lo -> poly (a q-commutation type relation); elements of the
/// base are then normal forms on the ordered monomials.
template <ScalarField K>
class NCPresentation {
public:
    PolyRingPtr base;
    K p11 = scalar_traits<K>::zero();
    K p12 = scalar_traits<K>::one();
    Poly<K> tau1, tau2, tau0;
    std::array<std::array<std::vector<Poly<K>>, 2>, 2> sigma; // sigma[i][j][gen]
    std::array<std::vector<Poly<K>>, 2> delta;                // delta[i][gen]
    std::map<std::pair<std::size_t, std::size_t>, Poly<K>> base_rels; // (hi,lo), hi > lo

    /// The commutative presentation: sigma = I, delta = 0, tau = 0, p = {0,1}.
    static NCPresentation trivial(PolyRingPtr ring) {
        NCPresentation p;
        p.base = ring;
        p.tau1 = p.tau2 = p.tau0 = Poly<K>::zero(ring);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t g = 0; g < ring->arity(); ++g)
                    p.sigma[i][j].push_back(i == j ? Poly<K>::generator(ring, g)
                                                   : Poly<K>::zero(ring));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t g = 0; g < ring->arity(); ++g)
                p.delta[i].push_back(Poly<K>::zero(ring));
        return p;
    }

    std::size_t arity() const { return base->arity(); }
    std::size_t y1_symbol() const { return arity(); }
    std::size_t y2_symbol() const { return arity() + 1; }
    std::size_t alphabet_size() const { return arity() + 2; }

    std::string symbol_name(std::size_t s) const {
        if (s < arity()) return base->gen_name(s);
        return s == y1_symbol() ? "y1" : "y2";
    }

    std::optional<std::size_t> symbol_of(const std::string& name) const {
        if (name == "y1") return y1_symbol();
        if (name == "y2") return y2_symbol();
        if (auto i = base->index_of(name)) return *i;
        return std::nullopt;
    }

    bool base_commutative() const { return base_rels.empty(); }

    /// Product in the base ring (straightening when base_rels are present).
    Poly<K> base_mul(const Poly<K>& a, const Poly<K>& b) const {
        if (base_commutative()) return a * b;
        Poly<K> out(base);
        for (const auto& [ea, ca] : a.terms())
            for (const auto& [eb, cb] : b.terms()) {
                Word w = exponents_to_word(ea);
                Word wb = exponents_to_word(eb);
                w.insert(w.end(), wb.begin(), wb.end());
                out = out + straighten_base_word(w).scaled(ca * cb);
            }
        return out;
    }

    /// Normal form of an arbitrary product of base generators.
    Poly<K> straighten_base_word(const Word& w) const {
        long fuel = 1u << 20;
        return straighten_base_word_impl(w, fuel);
    }

    Word exponents_to_word(const Exponents& e) const {
        Word w;
        for (std::size_t g = 0; g < e.size(); ++g)
            for (std::uint32_t k = 0; k < e[g]; ++k) w.push_back(g);
        return w;
    }

    Poly<K> word_to_base_poly(const Word& sorted) const {
        Exponents e(arity(), 0);
        for (std::size_t g : sorted) e.at(g) += 1;
        return Poly<K>::monomial(base, std::move(e), scalar_traits<K>::one());
    }

    bool operator==(const NCPresentation& o) const {
        return same_ring(base, o.base) && p11 == o.p11 && p12 == o.p12 && tau1 == o.tau1 &&
               tau2 == o.tau2 && tau0 == o.tau0 && sigma == o.sigma && delta == o.delta &&
               base_rels == o.base_rels;
    }

private:
    Poly<K> straighten_base_word_impl(const Word& w, long& fuel) const {
        if (--fuel <= 0)
            throw DomainError("base rewriting did not terminate (fuel exhausted)");
        for (std::size_t p = 0; p + 1 < w.size(); ++p) {
            if (w[p] <= w[p + 1]) continue;
            auto it = base_rels.find({w[p], w[p + 1]});
            Word prefix(w.begin(), w.begin() + p);
            Word suffix(w.begin() + p + 2, w.end());
            if (it == base_rels.end()) {
                Word next = prefix;
                next.push_back(w[p + 1]);
                next.push_back(w[p]);
                next.insert(next.end(), suffix.begin(), suffix.end());
                return straighten_base_word_impl(next, fuel);
            }
            Poly<K> out(base);
            for (const auto& [e, c] : it->second.terms()) {
                Word next = prefix;
                Word mid = exponents_to_word(e);
                next.insert(next.end(), mid.begin(), mid.end());
                next.insert(next.end(), suffix.begin(), suffix.end());
                out = out + straighten_base_word_impl(next, fuel).scaled(c);
            }
            return out;
        }
        return word_to_base_poly(w);
    }
};

template <ScalarField K>
using NCPresentationPtr = std::shared_ptr<const NCPresentation<K>>;

/// An algebra element in normal form: a finite left-R-combination of the
/// basis monomials y1^i y2^j, keyed by the exponent pair (i, j).
template <ScalarField K>
class NCElement {
public:
    using Key = std::pair<std::uint32_t, std::uint32_t>;

    NCElement() = default;
    explicit NCElement(NCPresentationPtr<K> pres) : pres_(std::move(pres)) {}

    static NCElement zero(NCPresentationPtr<K> pres) { return NCElement(std::move(pres)); }
    static NCElement one(NCPresentationPtr<K> pres) {
        NCElement e(pres);
        e.add_term({0, 0}, Poly<K>::constant(pres->base, scalar_traits<K>::one()));
        return e;
    }
    static NCElement from_base(NCPresentationPtr<K> pres, Poly<K> coeff) {
        NCElement e(pres);
        e.add_term({0, 0}, std::move(coeff));
        return e;
    }
    static NCElement y_power(NCPresentationPtr<K> pres, std::uint32_t i, std::uint32_t j) {
        NCElement e(pres);
        e.add_term({i, j}, Poly<K>::constant(pres->base, scalar_traits<K>::one()));
        return e;
    }

    const NCPresentationPtr<K>& pres() const { return pres_; }
    const std::map<Key, Poly<K>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Key k, Poly<K> coeff) {
        if (coeff.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, std::move(coeff));
        } else {
            it->second = it->second + coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend NCElement operator+(const NCElement& a, const NCElement& b) {
        a.check_same(b);
        NCElement r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }
    friend NCElement operator-(const NCElement& a, const NCElement& b) {
        a.check_same(b);
        NCElement r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
        return r;
    }
    NCElement operator-() const {
        NCElement r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    NCElement scaled(const K& s) const {
        NCElement r(pres_);
        if (scalar_traits<K>::is_zero(s)) return r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.scaled(s));
        return r;
    }

    bool operator==(const NCElement& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            const auto& [k, c] = *it;
            const bool wrap = c.terms().size() > 1;
            std::string cs = wrap ? "(" + c.str() + ")" : c.str();
            if (k.first == 0 && k.second == 0) {
                out += cs;
                continue;
            }
            if (cs == "1")
                cs.clear();
            else
                cs += "*";
            out += cs;
            if (k.first > 0) {
                out += "y1";
                if (k.first > 1) out += "^" + std::to_string(k.first);
                if (k.second > 0) out += "*";
            }
            if (k.second > 0) {
                out += "y2";
                if (k.second > 1) out += "^" + std::to_string(k.second);
            }
        }
        return out;
    }

private:
    void check_same(const NCElement& o) const {
        if (pres_ != o.pres_ && !(pres_ && o.pres_ && *pres_ == *o.pres_))
            throw RingMismatchError("elements of different presentations");
    }

    NCPresentationPtr<K> pres_;
    std::map<Key, Poly<K>> terms_;
};

/// Rewriting engine for one presentation. All operations are pure; the
/// reduction strategy is fixed (fold from the right with left
/// multiplications), so results are deterministic.
template <ScalarField K>
class NCArith {
public:
    explicit NCArith(NCPresentationPtr<K> pres) : p_(std::move(pres)) {}

    const NCPresentationPtr<K>& pres() const { return p_; }

    /// a * X coefficientwise (a in the base ring).
    NCElement<K> lmul_base(const Poly<K>& a, const NCElement<K>& x) const {
        NCElement<K> r(p_);
        for (const auto& [k, c] : x.terms()) r.add_term(k, p_->base_mul(a, c));
        return r;
    }

    /// y_{i+1} * X  (i = 0 for y1, 1 for y2).
    NCElement<K> lmul_y(int i, const NCElement<K>& x) const {
        NCElement<K> r(p_);
        for (const auto& [k, c] : x.terms()) {
            // y * (c y1^a y2^b) = (y * c) * y1^a y2^b
            NCElement<K> yc = push_through(i, c);
            for (const auto& [yk, yc_coeff] : yc.terms()) {
                if (yk.first == 0 && yk.second == 0) {
                    r.add_term(k, yc_coeff);
                } else if (yk == typename NCElement<K>::Key{1, 0}) {
                    r.add_term({k.first + 1, k.second}, yc_coeff);
                } else { // {0,1}: y2 * y1^a picks up REL1
                    NCElement<K> s = straighten_y2_y1pow(k.first);
                    for (const auto& [sk, sc] : s.terms())
                        r.add_term({sk.first, sk.second + k.second},
                                   p_->base_mul(yc_coeff, sc));
                }
            }
        }
        return r;
    }

    NCElement<K> mul(const NCElement<K>& a, const NCElement<K>& b) const {
        NCElement<K> r(p_);
        for (const auto& [k, c] : a.terms()) {
            NCElement<K> acc = b;
            for (std::uint32_t j = 0; j < k.second; ++j) acc = lmul_y(1, acc);
            for (std::uint32_t i = 0; i < k.first; ++i) acc = lmul_y(0, acc);
            r = r + lmul_base(c, acc);
        }
        return r;
    }

    /// Normal form of a word of symbols, folded from the right.
    NCElement<K> normal_form(const Word& w) const {
        NCElement<K> acc = NCElement<K>::one(p_);
        for (std::size_t i = w.size(); i-- > 0;) acc = lmul_symbol(w[i], acc);
        return acc;
    }

    NCElement<K> lmul_symbol(std::size_t s, const NCElement<K>& x) const {
        if (s < p_->arity()) return lmul_base(Poly<K>::generator(p_->base, s), x);
        if (s == p_->y1_symbol()) return lmul_y(0, x);
        if (s == p_->y2_symbol()) return lmul_y(1, x);
        throw DomainError("unknown symbol id " + std::to_string(s));
    }

    /// Normal form of y2 * y1^k via REL1 (memoized per engine).
    NCElement<K> straighten_y2_y1pow(std::uint32_t k) const {
        if (k == 0) return NCElement<K>::y_power(p_, 0, 1);
        if (auto it = straighten_cache_.find(k); it != straighten_cache_.end())
            return it->second;
        NCElement<K> prev = straighten_y2_y1pow(k - 1);
        NCElement<K> r(p_);
        // y2 y1^k = p11 y1^{k+1} + p12 y1 (y2 y1^{k-1}) + tau1 y1^k
        //            + tau2 (y2 y1^{k-1}) + tau0 y1^{k-1}
        r.add_term({k + 1, 0}, Poly<K>::constant(p_->base, p_->p11));
        r = r + lmul_y(0, prev).scaled(p_->p12);
        r.add_term({k, 0}, p_->tau1);
        r = r + lmul_base(p_->tau2, prev);
        r.add_term({k - 1, 0}, p_->tau0);
        straighten_cache_.emplace(k, r);
        return r;
    }

private:
    /// Normal form of y_{i+1} * a for a base polynomial a; the result has
    /// y-degree at most one. Defined one generator at a time:
    /// y_i (g m) = sigma_i1(g) (y1 m) + sigma_i2(g) (y2 m) + delta_i(g) m.
    NCElement<K> push_through(int i, const Poly<K>& a) const {
        NCElement<K> r(p_);
        for (const auto& [e, c] : a.terms()) {
            Word w = p_->exponents_to_word(e);
            r = r + push_through_word(i, w, 0).scaled(c);
        }
        return r;
    }

    NCElement<K> push_through_word(int i, const Word& w, std::size_t from) const {
        if (from == w.size()) return NCElement<K>::y_power(p_, i == 0 ? 1 : 0, i == 0 ? 0 : 1);
        Word key(w.begin() + from, w.end());
        if (auto it = push_cache_[i].find(key); it != push_cache_[i].end()) return it->second;
        const std::size_t g = w[from];
        NCElement<K> r = lmul_base(p_->sigma[i][0][g], push_through_word(0, w, from + 1));
        r = r + lmul_base(p_->sigma[i][1][g], push_through_word(1, w, from + 1));
        Word rest(w.begin() + from + 1, w.end());
        r.add_term({0, 0}, p_->base_mul(p_->delta[i][g], p_->word_to_base_poly(rest)));
        push_cache_[i].emplace(std::move(key), r);
        return r;
    }

    NCPresentationPtr<K> p_;
    // memoization only; results are unaffected
    mutable std::map<std::uint32_t, NCElement<K>> straighten_cache_;
    mutable std::array<std::map<Word, NCElement<K>>, 2> push_cache_;
};

template <ScalarField K>
NCElement<K> normal_form(const NCPresentationPtr<K>& pres, const Word& w) {
    return NCArith<K>(pres).normal_form(w);
}

template <ScalarField K>
NCElement<K> nc_multiply(const NCElement<K>& a, const NCElement<K>& b) {
    if (!a.pres() || !b.pres() || !(a.pres() == b.pres() || *a.pres() == *b.pres()))
        throw RingMismatchError("elements of different presentations");
    return NCArith<K>(a.pres()).mul(a, b);
}

struct OverlapIssue {
    Word word;
    std::size_t pos_a, pos_b; // rewrite positions whose branches disagree
    std::string nf_a, nf_b;
};

struct ConfluenceReport {
    std::size_t max_len = 0;
    std::size_t words_checked = 0;
    std::vector<OverlapIssue> issues;

    bool resolved() const { return issues.empty(); }
};

template <ScalarField K>
std::string confluence_str(const NCPresentation<K>& pres, const ConfluenceReport& report) {
    if (report.resolved())
        return "confluence: resolved up to length " + std::to_string(report.max_len) + " (" +
               std::to_string(report.words_checked) + " words)";
    std::string out = "confluence: UNRESOLVED overlaps up to length " +
                      std::to_string(report.max_len) + ":\n";
    auto branch_name = [&](const OverlapIssue& issue, std::size_t pos) {
        return pos >= issue.word.size() ? std::string("direct reduction")
                                        : "reduction at position " + std::to_string(pos + 1);
    };
    for (const auto& issue : report.issues) {
        out += "  word ";
        for (std::size_t i = 0; i < issue.word.size(); ++i) {
            if (i) out += "*";
            out += pres.symbol_name(issue.word[i]);
        }
        out += ": " + branch_name(issue, issue.pos_a) + " gives " + issue.nf_a + ", " +
               branch_name(issue, issue.pos_b) + " gives " + issue.nf_b + "\n";
    }
    return out;
}

namespace detail {

/// Expand one rewrite step at position p of the word (the pair (w[p],
/// w[p+1]) must be a rule left-hand side) into scalar-weighted words.
template <ScalarField K>
std::vector<std::pair<K, Word>> one_step(const NCPresentation<K>& pres, const Word& w,
                                         std::size_t p) {
    const std::size_t n = pres.arity();
    const std::size_t a = w[p], b = w[p + 1];
    std::vector<std::pair<K, Word>> expansion;

    auto emit_poly = [&](const Poly<K>& poly, std::vector<std::size_t> tail) {
        for (const auto& [e, c] : poly.terms()) {
            Word mid = pres.exponents_to_word(e);
            mid.insert(mid.end(), tail.begin(), tail.end());
            expansion.emplace_back(c, std::move(mid));
        }
    };

    if (a == pres.y2_symbol() && b == pres.y1_symbol()) {
        expansion.emplace_back(pres.p11, Word{pres.y1_symbol(), pres.y1_symbol()});
        expansion.emplace_back(pres.p12, Word{pres.y1_symbol(), pres.y2_symbol()});
        emit_poly(pres.tau1, {pres.y1_symbol()});
        emit_poly(pres.tau2, {pres.y2_symbol()});
        emit_poly(pres.tau0, {});
    } else if ((a == pres.y1_symbol() || a == pres.y2_symbol()) && b < n) {
        const int i = a == pres.y1_symbol() ? 0 : 1;
        emit_poly(pres.sigma[i][0][b], {pres.y1_symbol()});
        emit_poly(pres.sigma[i][1][b], {pres.y2_symbol()});
        emit_poly(pres.delta[i][b], {});
    } else if (a < n && b < n && a > b) {
        auto it = pres.base_rels.find({a, b});
        if (it != pres.base_rels.end()) {
            emit_poly(it->second, {});
        } else {
            expansion.emplace_back(scalar_traits<K>::one(), Word{b, a});
        }
    } else {
        throw DomainError("no rewrite rule applies at this position");
    }

    std::vector<std::pair<K, Word>> out;
    for (auto& [c, mid] : expansion) {
        Word full(w.begin(), w.begin() + p);
        full.insert(full.end(), mid.begin(), mid.end());
        full.insert(full.end(), w.begin() + p + 2, w.end());
        out.emplace_back(std::move(c), std::move(full));
    }
    return out;
}

template <ScalarField K>
bool is_redex(const NCPresentation<K>& pres, std::size_t a, std::size_t b) {
    const std::size_t n = pres.arity();
    if (a == pres.y2_symbol() && b == pres.y1_symbol()) return true;
    if ((a == pres.y1_symbol() || a == pres.y2_symbol()) && b < n) return true;
    if (a < n && b < n && a > b) return true;
    return false;
}

} // namespace detail

/// Desk-scale diamond-lemma verification: for every word over the
/// presentation alphabet up to max_len, reduce along every applicable
/// first step, finish with the deterministic strategy, and require all
/// branches (and the direct normal form) to agree. This verifies the
/// free-module basis claim up to the given length; it is not a proof.
template <ScalarField K>
ConfluenceReport confluence_check(const NCPresentationPtr<K>& pres, std::size_t max_len) {
    if (max_len < 3) throw DomainError("confluence check needs max_len >= 3");
    ConfluenceReport report;
    report.max_len = max_len;
    NCArith<K> arith(pres);
    const std::size_t alphabet = pres->alphabet_size();
    double words = 1;
    for (std::size_t i = 0; i < max_len; ++i) words *= static_cast<double>(alphabet);
    if (words > 2e6)
        throw DomainError("alphabet too large for a desk-scale confluence check");

    Word w;
    auto check_word = [&](const Word& word) {
        std::vector<std::size_t> redexes;
        for (std::size_t p = 0; p + 1 < word.size(); ++p)
            if (detail::is_redex(*pres, word[p], word[p + 1])) redexes.push_back(p);
        if (redexes.empty()) return;
        ++report.words_checked;
        NCElement<K> canonical = arith.normal_form(word);
        std::size_t canonical_pos = word.size(); // sentinel: the direct strategy
        for (std::size_t p : redexes) {
            NCElement<K> nf(pres);
            for (const auto& [c, word2] : detail::one_step(*pres, word, p))
                nf = nf + arith.normal_form(word2).scaled(c);
            if (!(nf == canonical)) {
                report.issues.push_back({word, canonical_pos, p, canonical.str(), nf.str()});
                return; // one witness per word keeps the report readable
            }
        }
    };

    // enumerate all words of length 3..max_len
    for (std::size_t len = 3; len <= max_len; ++len) {
        w.assign(len, 0);
        for (;;) {
            check_word(w);
            std::size_t i = 0;
            while (i < len && ++w[i] == alphabet) {
                w[i] = 0;
                ++i;
            }
            if (i == len) break;
        }
    }
    return report;
}

/// The commutator bracket divided by (t - 1) and evaluated at 1: the
/// semiclassical-limit bracket of the classes of u and v, returned in the
/// commutative ring on (base generators, y1, y2). Every coefficient of
/// uv - vu must vanish at t = 1; a nonzero value there means the quotient
/// at t = 1 is not commutative.
inline Poly<Rational> commutator_limit_bracket(const NCPresentationPtr<RatFunc>& pres,
                                               const Word& u, const Word& v) {
    NCArith<RatFunc> arith(pres);
    Word uv = u, vu = v;
    uv.insert(uv.end(), v.begin(), v.end());
    vu.insert(vu.end(), u.begin(), u.end());
    NCElement<RatFunc> diff = arith.normal_form(uv) - arith.normal_form(vu);

    PolyRingPtr limit_ring = extend_ring(pres->base, {"y1", "y2"});
    Poly<Rational> out(limit_ring);
    for (const auto& [k, coeff] : diff.terms()) {
        for (const auto& [e, f] : coeff.terms()) {
            if (!f.defined_at(Rational(1)))
                throw PoleError("commutator coefficient has a pole at t = 1: " + f.str());
            if (f.eval(Rational(1)) != 0)
                throw DomainError("commutator coefficient " + f.str() +
                                  " does not vanish at t = 1; the quotient at t = 1 is not "
                                  "commutative");
            RatFunc g = f.div_t_minus_1();
            Exponents big(limit_ring->arity(), 0);
            std::copy(e.begin(), e.end(), big.begin());
            big[pres->arity()] = k.first;
            big[pres->arity() + 1] = k.second;
            out.add_term(big, g.eval(Rational(1)));
        }
    }
    return out;
}

} // namespace dpx

#endif
