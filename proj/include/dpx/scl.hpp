#ifndef DPX_SCL_HPP
#define DPX_SCL_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dpx/dpe.hpp"
#include "dpx/ncalg.hpp"
#include "dpx/ratfunc.hpp"

namespace dpx {

/// A parametrized presentation over ratfunc scalars together with its
/// registered deformation points (all outside {0,1}).
struct ParamFamily {
    NCPresentationPtr<RatFunc> pres;
    std::vector<Rational> lambdas;
};

inline ParamFamily make_family(NCPresentationPtr<RatFunc> pres, std::vector<Rational> lambdas) {
    for (const auto& l : lambdas)
        if (l == 0 || l == 1)
            throw DomainError("deformation points must avoid 0 and 1, got " + to_string(l));
    return ParamFamily{std::move(pres), std::move(lambdas)};
}

/// One scalar coefficient of a presentation, addressed for reports and
/// profiles. identity is the value the coefficient must take at t = 1.
struct CoeffRef {
    std::string address;
    RatFunc value;
    Rational identity; // 0 or 1
};

namespace detail {

inline std::string monomial_key(const PolyRingPtr& ring, const Exponents& e) {
    Poly<Rational> m = Poly<Rational>::monomial(ring, e, Rational(1));
    return m.str();
}

} // namespace detail

/// Flatten every scalar coefficient of the presentation: p11, p12, the tau
/// coefficients, the sigma/delta image coefficients per generator, and any
/// base relation coefficients. Addresses also cover the identity slots
/// (diagonal sigma images, p12, base commutation monomials) even when the
/// stored coefficient is zero.
inline std::vector<CoeffRef> enumerate_coefficients(const NCPresentation<RatFunc>& p) {
    std::vector<CoeffRef> out;
    const PolyRingPtr& R = p.base;
    auto rational_ring = make_ring(R->gens());

    out.push_back({"p11", p.p11, Rational(0)});
    out.push_back({"p12", p.p12, Rational(1)});

    auto poly_coeffs = [&](const std::string& prefix, const Poly<RatFunc>& poly,
                           const Exponents* identity_mono) {
        bool identity_seen = false;
        for (const auto& [e, c] : poly.terms()) {
            const bool is_identity = identity_mono && e == *identity_mono;
            identity_seen |= is_identity;
            out.push_back({prefix + ":" + detail::monomial_key(rational_ring, e), c,
                           Rational(is_identity ? 1 : 0)});
        }
        if (identity_mono && !identity_seen)
            out.push_back({prefix + ":" + detail::monomial_key(rational_ring, *identity_mono),
                           RatFunc::zero(), Rational(1)});
    };

    const char* tau_names[3] = {"tau1", "tau2", "tau0"};
    const Poly<RatFunc>* taus[3] = {&p.tau1, &p.tau2, &p.tau0};
    for (int i = 0; i < 3; ++i) poly_coeffs(tau_names[i], *taus[i], nullptr);

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t g = 0; g < R->arity(); ++g) {
                const std::string prefix = "sigma" + std::to_string(i + 1) +
                                           std::to_string(j + 1) + ":" + R->gen_name(g);
                if (i == j) {
                    Exponents diag(R->arity(), 0);
                    diag[g] = 1;
                    poly_coeffs(prefix, p.sigma[i][j][g], &diag);
                } else {
                    poly_coeffs(prefix, p.sigma[i][j][g], nullptr);
                }
            }
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t g = 0; g < R->arity(); ++g)
            poly_coeffs("delta" + std::to_string(i + 1) + ":" + R->gen_name(g), p.delta[i][g],
                        nullptr);

    for (const auto& [pair, rel] : p.base_rels) {
        Exponents diag(R->arity(), 0);
        diag[pair.first] += 1;
        diag[pair.second] += 1;
        poly_coeffs("baserel:" + R->gen_name(pair.first) + ":" + R->gen_name(pair.second), rel,
                    &diag);
    }
    return out;
}

struct FamilyViolation {
    std::string address;
    std::string detail;
};

struct FamilyReport {
    std::vector<FamilyViolation> violations;
    bool pass() const { return violations.empty(); }
    std::string str() const {
        if (pass()) return "family: congruences and admissibility hold";
        std::string out = "family: VIOLATIONS\n";
        for (const auto& v : violations) out += "  " + v.address + ": " + v.detail + "\n";
        return out;
    }
};

/// Check the (t-1)-congruences and admissibility of a family: every
/// coefficient is defined at 1 and at each registered lambda, p11 and the
/// off-identity coefficients vanish at 1, and p12 and the identity slots
/// take value 1 there.
inline FamilyReport validate_family(const ParamFamily& f) {
    FamilyReport report;
    for (const auto& c : enumerate_coefficients(*f.pres)) {
        if (!c.value.defined_at(Rational(1))) {
            report.violations.push_back({c.address, "pole at t = 1 in " + c.value.str()});
            continue;
        }
        for (const auto& l : f.lambdas)
            if (!c.value.defined_at(l))
                report.violations.push_back(
                    {c.address, "pole at registered lambda = " + to_string(l)});
        const Rational v1 = c.value.eval(Rational(1));
        if (v1 != c.identity)
            report.violations.push_back(
                {c.address, "value at t = 1 is " + to_string(v1) + ", expected " +
                                to_string(c.identity) + " (coefficient " + c.value.str() + ")"});
    }
    return report;
}

/// The semiclassical limit of a family: the base bracket on R at t = 1 and
/// the DE-data computed by dividing each congruence by (t-1) and evaluating
/// at 1. The check report on the produced data is included: it passes
/// exactly when the limit really is a double Poisson extension.
struct LimitResult {
    PolyRingPtr ring; // base generators over rational scalars
    PoissonStructure<Rational> base_structure;
    DEData<Rational> dedata;
    CheckReport<Rational> check;
};

namespace detail {

inline Rational pde_value(const RatFunc& f) {
    return f.div_t_minus_1().eval(Rational(1));
}

inline Poly<Rational> pde_poly(const Poly<RatFunc>& p, const PolyRingPtr& target) {
    return p.map_scalars<Rational>(target, [](const RatFunc& f) { return pde_value(f); });
}

} // namespace detail

inline LimitResult semiclassical_limit(const ParamFamily& f) {
    FamilyReport report = validate_family(f);
    if (!report.pass())
        throw DomainError("family fails its congruences:\n" + report.str());

    const NCPresentation<RatFunc>& p = *f.pres;
    LimitResult out;
    out.ring = make_ring(p.base->gens());

    // base bracket: {g_hi, g_lo} = ((g_hi g_lo - g_lo g_hi)/(t-1)) at 1,
    // zero for a commutative base
    out.base_structure = PoissonStructure<Rational>(out.ring);
    for (const auto& [pair, rel] : p.base_rels) {
        Exponents mono(p.base->arity(), 0);
        mono[pair.first] += 1;
        mono[pair.second] += 1;
        Poly<RatFunc> comm =
            rel - Poly<RatFunc>::monomial(p.base, mono, scalar_traits<RatFunc>::one());
        out.base_structure.set_bracket(pair.second, pair.first,
                                       -detail::pde_poly(comm, out.ring));
    }

    DEData<Rational>& d = out.dedata;
    d = DEData<Rational>::zero(out.ring);
    d.base = out.base_structure;
    d.q11 = detail::pde_value(p.p11);
    d.q12 = detail::pde_value(p.p12 - RatFunc::one());
    d.w1 = detail::pde_poly(p.tau1, out.ring);
    d.w2 = detail::pde_poly(p.tau2, out.ring);
    d.w0 = detail::pde_poly(p.tau0, out.ring);

    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<Poly<Rational>> nu_imgs;
        for (std::size_t j = 0; j < 2; ++j) {
            std::vector<Poly<Rational>> imgs;
            for (std::size_t g = 0; g < p.base->arity(); ++g) {
                Poly<RatFunc> im = p.sigma[i][j][g];
                if (i == j) im = im - Poly<RatFunc>::generator(p.base, g);
                imgs.push_back(detail::pde_poly(im, out.ring));
            }
            d.alpha[i][j] = Derivation<Rational>(out.ring, std::move(imgs));
        }
        for (std::size_t g = 0; g < p.base->arity(); ++g)
            nu_imgs.push_back(detail::pde_poly(p.delta[i][g], out.ring));
        d.nu[i] = Derivation<Rational>(out.ring, std::move(nu_imgs));
    }

    out.check = check_dedata(d);
    return out;
}

/// Evaluate every coefficient of the family at a registered lambda,
/// producing the scalar-coefficient presentation of the deformation.
inline NCPresentation<Rational> deform(const ParamFamily& f, const Rational& lambda) {
    if (lambda == 0 || lambda == 1)
        throw DomainError("deformation point must avoid 0 and 1");
    bool registered = false;
    for (const auto& l : f.lambdas) registered |= (l == lambda);
    if (!registered)
        throw DomainError("lambda = " + to_string(lambda) + " is not registered with the family");

    const NCPresentation<RatFunc>& p = *f.pres;
    PolyRingPtr ring = make_ring(p.base->gens());
    auto eval_poly = [&](const Poly<RatFunc>& poly) {
        return poly.map_scalars<Rational>(ring,
                                          [&](const RatFunc& c) { return c.eval(lambda); });
    };

    NCPresentation<Rational> out;
    out.base = ring;
    out.p11 = p.p11.eval(lambda);
    out.p12 = p.p12.eval(lambda);
    out.tau1 = eval_poly(p.tau1);
    out.tau2 = eval_poly(p.tau2);
    out.tau0 = eval_poly(p.tau0);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t g = 0; g < p.base->arity(); ++g)
                out.sigma[i][j].push_back(eval_poly(p.sigma[i][j][g]));
        for (std::size_t g = 0; g < p.base->arity(); ++g)
            out.delta[i].push_back(eval_poly(p.delta[i][g]));
    }
    for (const auto& [pair, rel] : p.base_rels) out.base_rels.emplace(pair, eval_poly(rel));
    return out;
}

struct CrosscheckMismatch {
    std::string sym_a, sym_b;
    Poly<Rational> commutator_route;
    Poly<Rational> dedata_route;
};

struct CrosscheckReport {
    std::size_t pairs_checked = 0;
    std::vector<CrosscheckMismatch> mismatches;
    CheckReport<Rational> dedata_check; // informational

    bool pass() const { return mismatches.empty(); }
    std::string str() const {
        std::string out;
        if (pass()) {
            out = "crosscheck: pass (" + std::to_string(pairs_checked) + " generator pairs)";
        } else {
            out = "crosscheck: MISMATCHES\n";
            for (const auto& m : mismatches)
                out += "  {" + m.sym_a + ", " + m.sym_b + "}: commutator route " +
                       m.commutator_route.str() + ", DE-data route " + m.dedata_route.str() +
                       "\n";
        }
        if (!dedata_check.pass())
            out += "\nnote: the limit DE-data fails the extension conditions:\n" +
                   dedata_check.str();
        return out;
    }
};

/// Compare, for every pair of symbols (base generators, y1, y2), the
/// commutator-route bracket h^{-1}(uv - vu) at t = 1 against the bracket
/// table assembled from the limit DE-data. The two routes agree pairwise
/// whenever the congruences hold; the included check report records whether
/// the data also defines a genuine Poisson structure.
inline CrosscheckReport crosscheck_limit(const ParamFamily& f) {
    LimitResult limit = semiclassical_limit(f);
    ExtensionBuild<Rational> ext = build_extension_unchecked(limit.dedata);
    CrosscheckReport report;
    report.dedata_check = limit.check;

    const std::size_t symbols = f.pres->alphabet_size();
    for (std::size_t a = 0; a < symbols; ++a)
        for (std::size_t b = a + 1; b < symbols; ++b) {
            ++report.pairs_checked;
            Poly<Rational> via_commutator = commutator_limit_bracket(f.pres, Word{a}, Word{b});
            Poly<Rational> via_dedata = ext.structure.gen_bracket(a, b).lifted(
                via_commutator.ring());
            if (!(via_commutator == via_dedata))
                report.mismatches.push_back({f.pres->symbol_name(a), f.pres->symbol_name(b),
                                             std::move(via_commutator), std::move(via_dedata)});
        }
    return report;
}

/// Build a parametrized family whose deformation at lambda reproduces the
/// target presentation exactly: every scalar coefficient mu is replaced by
/// the line through (1, profile value) and (lambda, mu). The default
/// profile sends the identity slots (p12, diagonal sigma images, base
/// commutation monomials) to 1 and everything else to 0; overrides replace
/// individual profile values by address.
inline ParamFamily build_family_from_target(const NCPresentation<Rational>& target,
                                            const Rational& lambda,
                                            const std::map<std::string, Rational>& overrides = {}) {
    if (lambda == 0 || lambda == 1)
        throw DomainError("deformation point must avoid 0 and 1");

    PolyRingPtr ring = make_ring(target.base->gens());

    auto interp = [&](const std::string& address, const Rational& mu,
                      const Rational& canonical_profile) -> RatFunc {
        Rational profile = canonical_profile;
        if (auto it = overrides.find(address); it != overrides.end()) profile = it->second;
        if (profile == mu) return RatFunc(mu);
        return lagrange_interpolate({{Rational(1), profile}, {lambda, mu}});
    };

    auto interp_poly = [&](const std::string& prefix, const Poly<Rational>& poly,
                           const Exponents* identity_mono) {
        Poly<RatFunc> out(ring);
        bool identity_seen = false;
        for (const auto& [e, c] : poly.terms()) {
            const bool is_identity = identity_mono && e == *identity_mono;
            identity_seen |= is_identity;
            out.add_term(e, interp(prefix + ":" + detail::monomial_key(ring, e), c,
                                   Rational(is_identity ? 1 : 0)));
        }
        if (identity_mono && !identity_seen)
            out.add_term(*identity_mono,
                         interp(prefix + ":" + detail::monomial_key(ring, *identity_mono),
                                Rational(0), Rational(1)));
        return out;
    };

    auto pres = std::make_shared<NCPresentation<RatFunc>>();
    pres->base = ring;
    pres->p11 = interp("p11", target.p11, Rational(0));
    pres->p12 = interp("p12", target.p12, Rational(1));
    pres->tau1 = interp_poly("tau1", target.tau1, nullptr);
    pres->tau2 = interp_poly("tau2", target.tau2, nullptr);
    pres->tau0 = interp_poly("tau0", target.tau0, nullptr);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t g = 0; g < ring->arity(); ++g) {
                const std::string prefix = "sigma" + std::to_string(i + 1) +
                                           std::to_string(j + 1) + ":" + ring->gen_name(g);
                if (i == j) {
                    Exponents diag(ring->arity(), 0);
                    diag[g] = 1;
                    pres->sigma[i][j].push_back(interp_poly(prefix, target.sigma[i][j][g], &diag));
                } else {
                    pres->sigma[i][j].push_back(interp_poly(prefix, target.sigma[i][j][g],
                                                            nullptr));
                }
            }
        for (std::size_t g = 0; g < ring->arity(); ++g)
            pres->delta[i].push_back(interp_poly(
                "delta" + std::to_string(i + 1) + ":" + ring->gen_name(g), target.delta[i][g],
                nullptr));
    }
    for (const auto& [pair, rel] : target.base_rels) {
        Exponents diag(ring->arity(), 0);
        diag[pair.first] += 1;
        diag[pair.second] += 1;
        pres->base_rels.emplace(pair, interp_poly("baserel:" + ring->gen_name(pair.first) + ":" +
                                                      ring->gen_name(pair.second),
                                                  rel, &diag));
    }
    return make_family(std::move(pres), {lambda});
}

} // namespace dpx

#endif
