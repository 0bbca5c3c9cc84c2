#ifndef DPX_PBRACKET_HPP
#define DPX_PBRACKET_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dpx/poly.hpp"

namespace dpx {

/// Antisymmetric bracket table on ring generators, extended to the whole
/// polynomial ring as a biderivation. Entries are stored for i < j only;
/// {g_j, g_i} is -{g_i, g_j} and the diagonal is zero.
template <ScalarField K>
class PoissonStructure {
public:
    PoissonStructure() = default;
    explicit PoissonStructure(PolyRingPtr ring) : ring_(std::move(ring)) {}

    static PoissonStructure zero(PolyRingPtr ring) { return PoissonStructure(std::move(ring)); }

    const PolyRingPtr& ring() const { return ring_; }
    const std::map<std::pair<std::size_t, std::size_t>, Poly<K>>& table() const { return table_; }

    void set_bracket(std::size_t i, std::size_t j, Poly<K> value) {
        if (i == j) throw DomainError("bracket table diagonal must stay zero");
        if (!same_ring(value.ring(), ring_))
            throw RingMismatchError("bracket entry in a different ring");
        if (i > j) {
            std::swap(i, j);
            value = -value;
        }
        if (value.is_zero())
            table_.erase({i, j});
        else
            table_.insert_or_assign({i, j}, std::move(value));
    }

    /// {g_i, g_j}, with the sign implied by the stored orientation.
    Poly<K> gen_bracket(std::size_t i, std::size_t j) const {
        if (i == j) return Poly<K>::zero(ring_);
        const bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = table_.find({i, j});
        if (it == table_.end()) return Poly<K>::zero(ring_);
        return flip ? -it->second : it->second;
    }

    /// The biderivation extension: {f,g} = sum over i<j of
    /// {g_i,g_j}*(df/dg_i dg/dg_j - df/dg_j dg/dg_i).
    Poly<K> bracket(const Poly<K>& f, const Poly<K>& g) const {
        if (!same_ring(f.ring(), ring_) || !same_ring(g.ring(), ring_))
            throw RingMismatchError("bracket arguments live in a different ring");
        Poly<K> r(ring_);
        for (const auto& [ij, entry] : table_) {
            const auto [i, j] = ij;
            r = r + entry * (f.partial(i) * g.partial(j) - f.partial(j) * g.partial(i));
        }
        return r;
    }

    /// ham(a) = {a, -} as a derivation, stored by generator images.
    Derivation<K> hamiltonian(const Poly<K>& a) const {
        std::vector<Poly<K>> images;
        images.reserve(ring_->arity());
        for (std::size_t j = 0; j < ring_->arity(); ++j)
            images.push_back(bracket(a, Poly<K>::generator(ring_, j)));
        return Derivation<K>(ring_, std::move(images));
    }

    bool operator==(const PoissonStructure& o) const {
        return same_ring(ring_, o.ring_) && table_ == o.table_;
    }

private:
    PolyRingPtr ring_;
    std::map<std::pair<std::size_t, std::size_t>, Poly<K>> table_;
};

template <ScalarField K>
struct JacobiFailure {
    std::size_t i, j, k;
    Poly<K> residual;
};

template <ScalarField K>
struct JacobiReport {
    PolyRingPtr ring;
    std::size_t triples_checked = 0;
    std::vector<JacobiFailure<K>> failures;

    bool pass() const { return failures.empty(); }

    std::string str() const {
        if (pass())
            return "jacobi: pass (" + std::to_string(triples_checked) + " generator triples)";
        std::string out = "jacobi: FAIL\n";
        for (const auto& f : failures)
            out += "  J(" + ring->gen_name(f.i) + ", " + ring->gen_name(f.j) + ", " +
                   ring->gen_name(f.k) + ") = " + f.residual.str() + "\n";
        return out;
    }
};

/// Evaluate the Jacobi identity J(g_i,g_j,g_k) = {{g_i,g_j},g_k} +
/// {{g_j,g_k},g_i} + {{g_k,g_i},g_j} on every generator triple i<j<k.
/// J is a triderivation, so vanishing on generator triples decides the
/// identity on the whole ring.
template <ScalarField K>
JacobiReport<K> jacobi_check(const PoissonStructure<K>& ps) {
    JacobiReport<K> report;
    report.ring = ps.ring();
    const std::size_t n = ps.ring()->arity();
    for (std::size_t i = 0; i < n; ++i) {
        Poly<K> gi = Poly<K>::generator(ps.ring(), i);
        for (std::size_t j = i + 1; j < n; ++j) {
            Poly<K> gj = Poly<K>::generator(ps.ring(), j);
            for (std::size_t k = j + 1; k < n; ++k) {
                Poly<K> gk = Poly<K>::generator(ps.ring(), k);
                ++report.triples_checked;
                Poly<K> res = ps.bracket(ps.gen_bracket(i, j), gk) +
                              ps.bracket(ps.gen_bracket(j, k), gi) +
                              ps.bracket(ps.gen_bracket(k, i), gj);
                if (!res.is_zero()) report.failures.push_back({i, j, k, std::move(res)});
            }
        }
    }
    return report;
}

} // namespace dpx

#endif
