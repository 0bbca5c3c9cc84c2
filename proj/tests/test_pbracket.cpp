#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpx/expr.hpp"
#include "dpx/pbracket.hpp"
#include "test_util.hpp"

using namespace dpx;

namespace {

Poly<Rational> P(const PolyRingPtr& ring, const std::string& src) {
    return parse_poly<Rational>(src, ring);
}

// Independent oracle: expand the bracket by the Leibniz rule one generator
// at a time instead of through the bivector formula.
Poly<Rational> naive_gen_vs_poly(const PoissonStructure<Rational>& ps, std::size_t i,
                                 const Poly<Rational>& g);

Poly<Rational> naive_bracket(const PoissonStructure<Rational>& ps, const Poly<Rational>& f,
                             const Poly<Rational>& g) {
    const auto& ring = ps.ring();
    Poly<Rational> out(ring);
    for (const auto& [e, c] : f.terms()) {
        // peel one generator: {x_i m, g} = x_i {m, g} + m {x_i, g}
        bool constant = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            constant = false;
            Exponents rest = e;
            rest[i] -= 1;
            Poly<Rational> xi = Poly<Rational>::generator(ring, i);
            Poly<Rational> m = Poly<Rational>::monomial(ring, rest, Rational(1));
            out = out + (xi * naive_bracket(ps, m, g) + m * naive_gen_vs_poly(ps, i, g)).scaled(c);
            break;
        }
        if (constant) continue; // {const, g} = 0
    }
    return out;
}

Poly<Rational> naive_gen_vs_poly(const PoissonStructure<Rational>& ps, std::size_t i,
                                 const Poly<Rational>& g) {
    const auto& ring = ps.ring();
    Poly<Rational> out(ring);
    for (const auto& [e, c] : g.terms()) {
        bool constant = true;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            constant = false;
            Exponents rest = e;
            rest[j] -= 1;
            Poly<Rational> xj = Poly<Rational>::generator(ring, j);
            Poly<Rational> m = Poly<Rational>::monomial(ring, rest, Rational(1));
            out = out +
                  (xj * naive_gen_vs_poly(ps, i, m) + m * ps.gen_bracket(i, j)).scaled(c);
            break;
        }
        if (constant) continue;
    }
    return out;
}

// the coordinate Poisson structure of 2x2 matrices on k[a,b,c,d]
PoissonStructure<Rational> om2_structure(const PolyRingPtr& ring) {
    PoissonStructure<Rational> ps(ring);
    const auto idx = [&](const char* n) { return *ring->index_of(n); };
    ps.set_bracket(idx("a"), idx("b"), P(ring, "2*a*b"));  // {b,a} = -2ba
    ps.set_bracket(idx("a"), idx("c"), P(ring, "2*a*c"));  // {c,a} = -2ca
    ps.set_bracket(idx("b"), idx("d"), P(ring, "2*b*d"));  // {b,d} = 2bd
    ps.set_bracket(idx("c"), idx("d"), P(ring, "2*c*d"));  // {c,d} = 2cd
    ps.set_bracket(idx("a"), idx("d"), P(ring, "4*b*c"));  // {a,d} = 4bc
    return ps;
}

// the Poisson bracket of T_1 on k[z,x,y]
PoissonStructure<Rational> t1_structure(const PolyRingPtr& ring) {
    PoissonStructure<Rational> ps(ring);
    const auto idx = [&](const char* n) { return *ring->index_of(n); };
    ps.set_bracket(idx("z"), idx("x"), P(ring, "z*x - 2*y"));  // {x,z} = -zx+2y
    ps.set_bracket(idx("z"), idx("y"), P(ring, "-z*y + 2*x")); // {y,z} = zy-2x
    ps.set_bracket(idx("x"), idx("y"), P(ring, "x*y - 2*z"));  // {y,x} = -xy+2z
    return ps;
}

} // namespace

TEST_CASE("bracket on the matrix coordinate ring") {
    auto ring = make_ring({"a", "b", "c", "d"});
    auto ps = om2_structure(ring);
    CHECK(ps.bracket(P(ring, "b"), P(ring, "a")) == P(ring, "-2*b*a"));
    CHECK(ps.bracket(P(ring, "a^2"), P(ring, "d")) == P(ring, "8*a*b*c")); // 2a{a,d}
    testutil::Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const Poly<Rational> f = rng.poly<Rational>(ring);
        CHECK(ps.bracket(f, f).is_zero());
    }
}

TEST_CASE("bracket matches the one-generator-at-a-time oracle") {
    auto ring = make_ring({"a", "b", "c", "d"});
    auto ps = om2_structure(ring);
    testutil::Rng rng(608);
    for (int round = 0; round < 40; ++round) {
        const Poly<Rational> f = rng.poly<Rational>(ring, 3, 3);
        const Poly<Rational> g = rng.poly<Rational>(ring, 3, 3);
        CHECK(ps.bracket(f, g) == naive_bracket(ps, f, g));
    }
}

TEST_CASE("hamiltonian derivations") {
    auto ring = make_ring({"a", "b", "c", "d"});
    auto ps = om2_structure(ring);
    const auto ham_b = ps.hamiltonian(P(ring, "b"));
    CHECK(ham_b.image(*ring->index_of("a")) == P(ring, "-2*a*b")); // {b,a} = -2ba
    for (std::size_t g = 0; g < ring->arity(); ++g)
        CHECK(ham_b.image(g) == ps.bracket(P(ring, "b"), Poly<Rational>::generator(ring, g)));

    // an element whose table row vanishes has the zero hamiltonian
    auto cring = make_ring({"x", "y", "c"});
    PoissonStructure<Rational> cps(cring);
    cps.set_bracket(0, 1, P(cring, "x"));
    CHECK(cps.hamiltonian(P(cring, "c")).is_zero());

    auto t1ring = make_ring({"z", "x", "y"});
    auto t1 = t1_structure(t1ring);
    CHECK(t1.hamiltonian(P(t1ring, "z")).image(*t1ring->index_of("x")) ==
          P(t1ring, "z*x - 2*y"));
}

TEST_CASE("jacobi check") {
    auto ring = make_ring({"a", "b", "c", "d"});
    auto report = jacobi_check(om2_structure(ring));
    CHECK(report.pass());
    CHECK(report.triples_checked == 4);

    auto t1ring = make_ring({"z", "x", "y"});
    CHECK(jacobi_check(t1_structure(t1ring)).pass());

    // a broken table: {x1,x2}=x3, {x2,x3}=x1, {x3,x1}=x1
    auto xring = make_ring({"x1", "x2", "x3"});
    PoissonStructure<Rational> bad(xring);
    bad.set_bracket(0, 1, P(xring, "x3"));
    bad.set_bracket(1, 2, P(xring, "x1"));
    bad.set_bracket(2, 0, P(xring, "x1"));
    auto bad_report = jacobi_check(bad);
    REQUIRE(!bad_report.pass());
    REQUIRE(bad_report.failures.size() == 1);
    // direct expansion oracle
    const Poly<Rational> expected = bad.bracket(bad.gen_bracket(0, 1), P(xring, "x3")) +
                                    bad.bracket(bad.gen_bracket(1, 2), P(xring, "x1")) +
                                    bad.bracket(bad.gen_bracket(2, 0), P(xring, "x2"));
    CHECK(bad_report.failures[0].residual == expected);
    CHECK(expected == P(xring, "x3")); // = {{x3,x1},x2} = {x1,x2}

    // two generators: no triples, vacuous pass
    auto two = make_ring({"x", "y"});
    PoissonStructure<Rational> ps2(two);
    ps2.set_bracket(0, 1, P(two, "x*y"));
    auto r2 = jacobi_check(ps2);
    CHECK(r2.pass());
    CHECK(r2.triples_checked == 0);
}

TEST_CASE("bracket is antisymmetric and Leibniz on random inputs") {
    auto ring = make_ring({"a", "b", "c", "d"});
    auto ps = om2_structure(ring);
    testutil::Rng rng(123);
    for (int round = 0; round < 100; ++round) {
        const Poly<Rational> f = rng.poly<Rational>(ring);
        const Poly<Rational> g = rng.poly<Rational>(ring);
        const Poly<Rational> h = rng.poly<Rational>(ring);
        CHECK(ps.bracket(f, g) == -ps.bracket(g, f));
        CHECK(ps.bracket(f, g * h) == g * ps.bracket(f, h) + h * ps.bracket(f, g));
        CHECK(ps.bracket(f * g, h) == f * ps.bracket(g, h) + g * ps.bracket(f, h));
    }
}

TEST_CASE("generator-triple jacobi pass extends to random polynomials") {
    auto ring = make_ring({"a", "b", "c", "d"});
    auto ps = om2_structure(ring);
    REQUIRE(jacobi_check(ps).pass());
    testutil::Rng rng(4860);
    for (int round = 0; round < 50; ++round) {
        const Poly<Rational> f = rng.poly<Rational>(ring);
        const Poly<Rational> g = rng.poly<Rational>(ring);
        const Poly<Rational> h = rng.poly<Rational>(ring);
        const Poly<Rational> jac = ps.bracket(ps.bracket(f, g), h) +
                                   ps.bracket(ps.bracket(g, h), f) +
                                   ps.bracket(ps.bracket(h, f), g);
        CHECK(jac.is_zero());
    }
}
