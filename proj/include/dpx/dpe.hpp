#ifndef DPX_DPE_HPP
#define DPX_DPE_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpx/pbracket.hpp"
#include "dpx/poly.hpp"

namespace dpx {

/// The defining datum {q, alpha, nu, w} of a double Poisson extension
/// R[y1,y2]: scalars q11, q12, a 2x2 matrix of derivations alpha, a pair of
/// derivations nu, and w1, w2, w0 in R. The derivation property of the six
/// maps holds by representation (generator images + Leibniz extension).
template <ScalarField K>
struct DEData {
    PolyRingPtr ring;
    PoissonStructure<K> base;
    K q11 = scalar_traits<K>::zero();
    K q12 = scalar_traits<K>::zero();
    std::array<std::array<Derivation<K>, 2>, 2> alpha;
    std::array<Derivation<K>, 2> nu;
    Poly<K> w1, w2, w0;

    static DEData zero(PolyRingPtr ring) {
        DEData d;
        d.ring = ring;
        d.base = PoissonStructure<K>::zero(ring);
        for (auto& row : d.alpha)
            for (auto& a : row) a = Derivation<K>::zero(ring);
        for (auto& n : d.nu) n = Derivation<K>::zero(ring);
        d.w1 = d.w2 = d.w0 = Poly<K>::zero(ring);
        return d;
    }

    bool operator==(const DEData& o) const {
        return same_ring(ring, o.ring) && base == o.base && q11 == o.q11 && q12 == o.q12 &&
               alpha == o.alpha && nu == o.nu && w1 == o.w1 && w2 == o.w2 && w0 == o.w0;
    }
};

template <ScalarField K>
struct ConditionFailure {
    int condition;                    // 2..13
    std::vector<std::size_t> witness; // generator indices (one or two)
    Poly<K> residual;                 // left side minus right side
};

template <ScalarField K>
struct CheckReport {
    PolyRingPtr ring;
    std::vector<ConditionFailure<K>> failures;

    bool pass() const { return failures.empty(); }

    std::vector<int> failed_conditions() const {
        std::vector<int> out;
        for (const auto& f : failures)
            if (out.empty() || out.back() != f.condition) out.push_back(f.condition);
        return out;
    }

    std::string str() const {
        if (pass()) return "13/13 conditions hold";
        std::string out = "conditions FAILED:\n";
        for (const auto& f : failures) {
            out += "  (" + std::to_string(f.condition) + ") on ";
            for (std::size_t i = 0; i < f.witness.size(); ++i) {
                if (i) out += ", ";
                out += ring->gen_name(f.witness[i]);
            }
            out += ": residual " + f.residual.str() + "\n";
        }
        return out;
    }
};

/// Check conditions (2)-(13) defining a double Poisson extension.
/// Condition (1) -- the six maps are derivations -- holds by representation.
/// Conditions (2)-(7) are evaluated on generator pairs only: both sides are
/// biderivations in (a,b), so agreement on generators decides agreement on
/// the ring (a randomized full-polynomial check lives in the test suite).
/// Conditions (8)-(13) equate derivations, decided on single generators.
template <ScalarField K>
CheckReport<K> check_dedata(const DEData<K>& d) {
    CheckReport<K> report;
    report.ring = d.ring;
    const std::size_t n = d.ring->arity();
    const auto& B = d.base;
    const auto& A11 = d.alpha[0][0];
    const auto& A12 = d.alpha[0][1];
    const auto& A21 = d.alpha[1][0];
    const auto& A22 = d.alpha[1][1];
    const auto& N1 = d.nu[0];
    const auto& N2 = d.nu[1];

    auto add_failure = [&](int cond, std::vector<std::size_t> witness, Poly<K> res) {
        if (!res.is_zero()) report.failures.push_back({cond, std::move(witness), std::move(res)});
    };

    // pairwise conditions (2)-(7)
    for (std::size_t i = 0; i < n; ++i) {
        Poly<K> a = Poly<K>::generator(d.ring, i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Poly<K> b = Poly<K>::generator(d.ring, j);
            Poly<K> ab = B.gen_bracket(i, j);
            auto lhs = [&](const Derivation<K>& D) {
                return D.apply(ab) - B.bracket(D.apply(a), b) - B.bracket(a, D.apply(b));
            };
            add_failure(2, {i, j},
                        lhs(A11) - (A12.apply(a) * A21.apply(b) - A21.apply(a) * A12.apply(b)));
            add_failure(3, {i, j},
                        lhs(A22) - (A21.apply(a) * A12.apply(b) - A12.apply(a) * A21.apply(b)));
            add_failure(4, {i, j},
                        lhs(A12) - (A11.apply(a) * A12.apply(b) - A12.apply(a) * A11.apply(b) +
                                    A12.apply(a) * A22.apply(b) - A22.apply(a) * A12.apply(b)));
            add_failure(5, {i, j},
                        lhs(A21) - (A21.apply(a) * A11.apply(b) - A11.apply(a) * A21.apply(b) +
                                    A22.apply(a) * A21.apply(b) - A21.apply(a) * A22.apply(b)));
            add_failure(6, {i, j},
                        lhs(N1) - (A11.apply(a) * N1.apply(b) - N1.apply(a) * A11.apply(b) +
                                   A12.apply(a) * N2.apply(b) - N2.apply(a) * A12.apply(b)));
            add_failure(7, {i, j},
                        lhs(N2) - (A21.apply(a) * N1.apply(b) - N1.apply(a) * A21.apply(b) +
                                   A22.apply(a) * N2.apply(b) - N2.apply(a) * A22.apply(b)));
        }
    }

    // derivation identities (8)-(13)
    const K two = scalar_traits<K>::from_rational(Rational(2));
    using D = Derivation<K>;
    const D c8 = D::commutator(A21, A11) -
                 (A11.scaled(d.q11) + A21.scaled(d.q12) - A22.scaled(d.q11));
    const D c9 = D::commutator(A22, A11) + D::commutator(A21, A12) - A12.scaled(two * d.q11);
    const D c10 = D::commutator(A22, A12) - A12.scaled(d.q12);
    const D c11 = D::commutator(N2, A11) + D::commutator(A21, N1) -
                  (N1.scaled(two * d.q11) + N2.scaled(d.q12) + A21.scaled_by(d.w2) -
                   A22.scaled_by(d.w1) + B.hamiltonian(d.w1));
    const D c12 = D::commutator(N2, A12) + D::commutator(A22, N1) -
                  (N1.scaled(d.q12) + A12.scaled_by(d.w1) - A11.scaled_by(d.w2) +
                   B.hamiltonian(d.w2));
    const D c13 = D::commutator(N2, N1) -
                  (N1.scaled_by(d.w1) + N2.scaled_by(d.w2) - A11.scaled_by(d.w0) -
                   A22.scaled_by(d.w0) + B.hamiltonian(d.w0));
    const std::array<const D*, 6> conds{&c8, &c9, &c10, &c11, &c12, &c13};
    for (int c = 0; c < 6; ++c)
        for (std::size_t i = 0; i < n; ++i)
            add_failure(8 + c, {i}, conds[c]->image(i));

    std::stable_sort(report.failures.begin(), report.failures.end(),
                     [](const auto& x, const auto& y) { return x.condition < y.condition; });
    return report;
}

/// The ring R[y1,y2] together with its bracket table.
template <ScalarField K>
struct ExtensionBuild {
    PolyRingPtr ring; // base generators followed by y1, y2
    std::size_t y1, y2;
    PoissonStructure<K> structure;

    Poly<K> gen(std::size_t i) const { return Poly<K>::generator(ring, i); }
};

/// Assemble the extension bracket table from the data, without validating
/// the conditions: {y2,y1} = q11 y1^2 + q12 y1 y2 + w1 y1 + w2 y2 + w0 and
/// {y_i, a} = alpha_i1(a) y1 + alpha_i2(a) y2 + nu_i(a), base entries kept.
template <ScalarField K>
ExtensionBuild<K> build_extension_unchecked(const DEData<K>& d) {
    ExtensionBuild<K> ext;
    ext.ring = extend_ring(d.ring, {"y1", "y2"});
    const std::size_t n = d.ring->arity();
    ext.y1 = n;
    ext.y2 = n + 1;
    ext.structure = PoissonStructure<K>(ext.ring);

    for (const auto& [ij, entry] : d.base.table())
        ext.structure.set_bracket(ij.first, ij.second, entry.lifted(ext.ring));

    const Poly<K> y1 = ext.gen(ext.y1), y2 = ext.gen(ext.y2);
    for (std::size_t i = 0; i < n; ++i) {
        // {y1, g} and {y2, g}, stored as {g, y1} = -{y1, g} etc.
        Poly<K> by1 = d.alpha[0][0].image(i).lifted(ext.ring) * y1 +
                      d.alpha[0][1].image(i).lifted(ext.ring) * y2 +
                      d.nu[0].image(i).lifted(ext.ring);
        Poly<K> by2 = d.alpha[1][0].image(i).lifted(ext.ring) * y1 +
                      d.alpha[1][1].image(i).lifted(ext.ring) * y2 +
                      d.nu[1].image(i).lifted(ext.ring);
        ext.structure.set_bracket(i, ext.y1, -by1);
        ext.structure.set_bracket(i, ext.y2, -by2);
    }
    Poly<K> y2y1 = (y1 * y1).scaled(d.q11) + (y1 * y2).scaled(d.q12) +
                   d.w1.lifted(ext.ring) * y1 + d.w2.lifted(ext.ring) * y2 +
                   d.w0.lifted(ext.ring);
    ext.structure.set_bracket(ext.y1, ext.y2, -y2y1);
    return ext;
}

/// Build the extension after verifying the data; rejects invalid DE-data.
template <ScalarField K>
ExtensionBuild<K> build_extension(const DEData<K>& d) {
    CheckReport<K> report = check_dedata(d);
    if (!report.pass())
        throw DomainError("DE-data does not define a double Poisson extension:\n" + report.str());
    return build_extension_unchecked(d);
}

/// Bring q = {q11, q12} into one of the normal forms {0,p}, {1,0}, {0,0} by
/// a linear change of the variable pair. Returns the new data and the matrix
/// M with (z1, z2)^T = M (y1, y2)^T.
///   q12 != 0          : p = q11/q12, z1 = y1, z2 = p y1 + y2
///   q12 == 0, q11 != 0: z1 = q11 y1, z2 = y2
///   q == 0            : identity
template <ScalarField K>
std::pair<DEData<K>, std::array<std::array<K, 2>, 2>> normalize_dedata(const DEData<K>& d) {
    const K zero = scalar_traits<K>::zero();
    const K one = scalar_traits<K>::one();
    std::array<std::array<K, 2>, 2> m{{{one, zero}, {zero, one}}};

    if (!scalar_traits<K>::is_zero(d.q12)) {
        const K p = scalar_traits<K>::div(d.q11, d.q12);
        DEData<K> out = d;
        out.q11 = zero;
        out.q12 = d.q12;
        const auto& A11 = d.alpha[0][0];
        const auto& A12 = d.alpha[0][1];
        const auto& A21 = d.alpha[1][0];
        const auto& A22 = d.alpha[1][1];
        out.alpha[0][0] = A11 - A12.scaled(p);
        out.alpha[0][1] = A12;
        out.alpha[1][0] = A21 + (A11 - A22).scaled(p) - A12.scaled(p * p);
        out.alpha[1][1] = A12.scaled(p) + A22;
        out.nu[0] = d.nu[0];
        out.nu[1] = d.nu[1] + d.nu[0].scaled(p);
        out.w1 = d.w1 - d.w2.scaled(p);
        out.w2 = d.w2;
        out.w0 = d.w0;
        m[1][0] = p;
        return {std::move(out), m};
    }
    if (!scalar_traits<K>::is_zero(d.q11)) {
        const K inv = scalar_traits<K>::div(one, d.q11);
        DEData<K> out = d;
        out.q11 = one;
        out.q12 = zero;
        out.alpha[0][1] = d.alpha[0][1].scaled(d.q11);
        out.alpha[1][0] = d.alpha[1][0].scaled(inv);
        out.nu[0] = d.nu[0].scaled(d.q11);
        out.w2 = d.w2.scaled(d.q11);
        out.w0 = d.w0.scaled(d.q11);
        m[0][0] = d.q11;
        return {std::move(out), m};
    }
    return {d, m};
}

/// Single-variable Poisson polynomial extension data R[x; beta, nu]:
/// {x, a} = beta(a) x + nu(a) for a in R.
template <ScalarField K>
struct PoissonPolyExtData {
    PolyRingPtr ring;
    PoissonStructure<K> base;
    std::string var_name = "x";
    Derivation<K> beta, nu;

    bool operator==(const PoissonPolyExtData& o) const {
        return same_ring(ring, o.ring) && base == o.base && var_name == o.var_name &&
               beta == o.beta && nu == o.nu;
    }
};

/// The bracket table of R[x; beta, nu] on the extended ring.
template <ScalarField K>
ExtensionBuild<K> build_poly_extension(const PoissonPolyExtData<K>& e) {
    ExtensionBuild<K> ext;
    ext.ring = extend_ring(e.ring, {e.var_name});
    const std::size_t n = e.ring->arity();
    ext.y1 = ext.y2 = n; // single adjoined variable
    ext.structure = PoissonStructure<K>(ext.ring);
    for (const auto& [ij, entry] : e.base.table())
        ext.structure.set_bracket(ij.first, ij.second, entry.lifted(ext.ring));
    const Poly<K> x = ext.gen(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly<K> bx = e.beta.image(i).lifted(ext.ring) * x + e.nu.image(i).lifted(ext.ring);
        ext.structure.set_bracket(i, n, -bx); // {g, x} = -{x, g}
    }
    return ext;
}

/// Replace the extension variable z by z' = z - s (s in R): same beta,
/// nu'(a) = beta(a) s + nu(a) + {a, s}.
template <ScalarField K>
PoissonPolyExtData<K> shift_variable(const PoissonPolyExtData<K>& e, const Poly<K>& s) {
    if (!same_ring(s.ring(), e.ring))
        throw RingMismatchError("shift element must lie in the base ring");
    PoissonPolyExtData<K> out = e;
    std::vector<Poly<K>> images;
    images.reserve(e.ring->arity());
    for (std::size_t i = 0; i < e.ring->arity(); ++i) {
        Poly<K> a = Poly<K>::generator(e.ring, i);
        images.push_back(e.beta.image(i) * s + e.nu.image(i) + e.base.bracket(a, s));
    }
    out.nu = Derivation<K>(e.ring, std::move(images));
    return out;
}

/// Result of the iterated-extension criterion: either a presentation of
/// R[y1,y2] as an iterated Poisson polynomial extension (Form1 adjoins y1
/// first, Form2 adjoins y2 first), or witnesses that none exists in these
/// variables.
template <ScalarField K>
struct IteratedDetection {
    enum class Kind { Form1, Form2, CriterionFails } kind;

    // Form1 / Form2: the inner extension and the outer (beta, mu) pair on
    // the intermediate ring.
    PoissonPolyExtData<K> inner;
    PolyRingPtr inter_ring;
    Derivation<K> beta, mu;

    // CriterionFails: a generator with alpha12(g) != 0, and either a
    // generator with alpha21(g) != 0 or q11 != 0.
    std::optional<std::size_t> alpha12_witness;
    std::optional<std::size_t> alpha21_witness;
    bool q11_nonzero = false;
};

/// Decide whether the double Poisson extension given by d is an iterated
/// Poisson polynomial extension in the variables y1, y2: possible if and
/// only if alpha12 = 0, or alpha21 = 0 and q11 = 0.
template <ScalarField K>
IteratedDetection<K> detect_iterated(const DEData<K>& d) {
    IteratedDetection<K> out;
    const std::size_t n = d.ring->arity();

    auto first_nonzero = [&](const Derivation<K>& dv) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < n; ++i)
            if (!dv.image(i).is_zero()) return i;
        return std::nullopt;
    };
    const auto a12_wit = first_nonzero(d.alpha[0][1]);
    const auto a21_wit = first_nonzero(d.alpha[1][0]);
    const bool q11_nz = !scalar_traits<K>::is_zero(d.q11);

    if (!a12_wit) {
        // R[y1; alpha11, nu1][y2; beta, mu]
        out.kind = IteratedDetection<K>::Kind::Form1;
        out.inner = {d.ring, d.base, "y1", d.alpha[0][0], d.nu[0]};
        auto inner_ext = build_poly_extension(out.inner);
        out.inter_ring = inner_ext.ring;
        const Poly<K> y1 = Poly<K>::generator(out.inter_ring, n);
        std::vector<Poly<K>> beta_imgs, mu_imgs;
        for (std::size_t i = 0; i < n; ++i) {
            beta_imgs.push_back(d.alpha[1][1].image(i).lifted(out.inter_ring));
            mu_imgs.push_back(d.alpha[1][0].image(i).lifted(out.inter_ring) * y1 +
                              d.nu[1].image(i).lifted(out.inter_ring));
        }
        beta_imgs.push_back(y1.scaled(d.q12) + d.w2.lifted(out.inter_ring));
        mu_imgs.push_back((y1 * y1).scaled(d.q11) + d.w1.lifted(out.inter_ring) * y1 +
                          d.w0.lifted(out.inter_ring));
        out.beta = Derivation<K>(out.inter_ring, std::move(beta_imgs));
        out.mu = Derivation<K>(out.inter_ring, std::move(mu_imgs));
        return out;
    }
    if (!a21_wit && !q11_nz) {
        // R[y2; alpha22, nu2][y1; beta, mu]
        out.kind = IteratedDetection<K>::Kind::Form2;
        out.inner = {d.ring, d.base, "y2", d.alpha[1][1], d.nu[1]};
        auto inner_ext = build_poly_extension(out.inner);
        out.inter_ring = inner_ext.ring;
        const Poly<K> y2 = Poly<K>::generator(out.inter_ring, n);
        std::vector<Poly<K>> beta_imgs, mu_imgs;
        for (std::size_t i = 0; i < n; ++i) {
            beta_imgs.push_back(d.alpha[0][0].image(i).lifted(out.inter_ring));
            mu_imgs.push_back(d.alpha[0][1].image(i).lifted(out.inter_ring) * y2 +
                              d.nu[0].image(i).lifted(out.inter_ring));
        }
        beta_imgs.push_back(-(y2.scaled(d.q12)) - d.w1.lifted(out.inter_ring));
        mu_imgs.push_back(-(d.w2.lifted(out.inter_ring) * y2) - d.w0.lifted(out.inter_ring));
        out.beta = Derivation<K>(out.inter_ring, std::move(beta_imgs));
        out.mu = Derivation<K>(out.inter_ring, std::move(mu_imgs));
        return out;
    }
    out.kind = IteratedDetection<K>::Kind::CriterionFails;
    out.alpha12_witness = a12_wit;
    out.alpha21_witness = a21_wit;
    out.q11_nonzero = q11_nz;
    return out;
}

/// Assemble the DE-data of an iterated Poisson polynomial extension
/// R[y1; alpha1, nu1][y2; alpha2, nu2] with alpha2(R) in R and
/// nu2(a) = nu2_1(a) y1 + nu2_0(a):
///   q = {mu11, mu12}, alpha = [[alpha1, 0], [nu2_1, alpha2]],
///   nu = (nu1, nu2_0), w = {w1, w2, w0},
/// where alpha2(y1) = mu12 y1 + w2 and nu2(y1) = mu11 y1^2 + w1 y1 + w0.
/// The result is validated; invalid input data is rejected.
template <ScalarField K>
DEData<K> from_iterated(const PoissonPolyExtData<K>& ext1, const Derivation<K>& alpha2,
                        const Derivation<K>& nu2_1, const Derivation<K>& nu2_0, const K& mu12,
                        const K& mu11, const Poly<K>& w2, const Poly<K>& w1, const Poly<K>& w0) {
    const PolyRingPtr R = ext1.ring;
    for (const auto* dv : {&alpha2, &nu2_1, &nu2_0})
        if (!same_ring(dv->ring(), R))
            throw RingMismatchError("iterated extension maps must live on the base ring");
    for (const auto* p : {&w2, &w1, &w0})
        if (!same_ring(p->ring(), R))
            throw RingMismatchError("w elements must lie in the base ring");

    DEData<K> d = DEData<K>::zero(R);
    d.base = ext1.base;
    d.q11 = mu11;
    d.q12 = mu12;
    d.alpha[0][0] = ext1.beta;
    d.alpha[0][1] = Derivation<K>::zero(R);
    d.alpha[1][0] = nu2_1;
    d.alpha[1][1] = alpha2;
    d.nu[0] = ext1.nu;
    d.nu[1] = nu2_0;
    d.w1 = w1;
    d.w2 = w2;
    d.w0 = w0;

    CheckReport<K> report = check_dedata(d);
    if (!report.pass())
        throw DomainError("iterated extension data violates the extension conditions:\n" +
                          report.str());
    return d;
}

} // namespace dpx

#endif
