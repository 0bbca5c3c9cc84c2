#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpx/expr.hpp"
#include "dpx/poly.hpp"
#include "test_util.hpp"

using namespace dpx;

namespace {

Poly<Rational> P(const PolyRingPtr& ring, const std::string& src) {
    return parse_poly<Rational>(src, ring);
}

} // namespace

TEST_CASE("ring construction") {
    auto ring = make_ring({"x", "y"});
    CHECK(ring->arity() == 2);
    CHECK(ring->index_of("y") == 1);
    CHECK(!ring->index_of("z"));
    CHECK_THROWS_AS(make_ring({"x", "x"}), DomainError);
    CHECK_THROWS_AS(make_ring({"t"}), DomainError);
}

TEST_CASE("polynomial arithmetic") {
    auto ring = make_ring({"x"});
    CHECK(P(ring, "(x+1)*(x-1)") == P(ring, "x^2 - 1"));

    auto ext = make_ring({"y1", "y2"});
    CHECK(P(ext, "y1*y2") + P(ext, "y1*y2") == P(ext, "2*y1*y2"));

    auto ab = make_ring({"a", "b"});
    const Poly<Rational> product = P(ab, "(a-b)*(a+b)");
    // distribute-and-collect oracle: a*a + a*b - b*a - b*b
    const Poly<Rational> oracle =
        P(ab, "a*a") + P(ab, "a*b") - P(ab, "b*a") - P(ab, "b*b");
    CHECK(product == oracle);
    CHECK(product == P(ab, "a^2 - b^2"));

    CHECK_THROWS_AS(P(ring, "x") + P(ab, "a"), RingMismatchError);
}

TEST_CASE("printing and reparsing round trip") {
    testutil::Rng rng(42);
    auto ring = make_ring({"x", "y", "z"});
    for (int round = 0; round < 100; ++round) {
        const Poly<Rational> p = rng.poly<Rational>(ring);
        CHECK(parse_poly<Rational>(p.str(), ring) == p);
    }
    auto fring = make_ring({"x"});
    testutil::Rng rng2(43);
    for (int round = 0; round < 100; ++round) {
        Poly<RatFunc> p(fring);
        for (int i = 0; i < 3; ++i) {
            Exponents e{static_cast<std::uint32_t>(rng2.intv(0, 3))};
            p.add_term(e, rng2.ratfunc(2, 1));
        }
        CHECK(parse_poly<RatFunc>(p.str(), fring) == p);
    }
}

TEST_CASE("partial derivatives") {
    auto ring = make_ring({"x", "y"});
    CHECK(P(ring, "x^3*y^2").partial(0) == P(ring, "3*x^2*y^2"));
    CHECK(P(ring, "x^3*y^2").partial(1) == P(ring, "2*x^3*y"));
    CHECK(P(ring, "5").partial(0).is_zero());
}

TEST_CASE("derivation application") {
    auto ring = make_ring({"x"});
    const Derivation<Rational> d(ring, {P(ring, "x^2")});
    // Leibniz oracle by hand: d(x^3) = d(x)x^2 + x d(x) x + x^2 d(x) = 3x^4
    CHECK(d.apply(P(ring, "x^3")) == P(ring, "3*x^4"));

    auto zring = make_ring({"z"});
    const Derivation<Rational> a11(zring, {parse_poly<Rational>("-z", zring)}); // z -> -z
    CHECK(a11.apply(parse_poly<Rational>("z^2", zring)) ==
          parse_poly<Rational>("-2*z^2", zring));

    const auto zero = Derivation<Rational>::zero(ring);
    CHECK(zero.apply(P(ring, "x^3 + 2*x")).is_zero());

    CHECK_THROWS_AS(d.apply(parse_poly<Rational>("z", zring)), RingMismatchError);
}

TEST_CASE("derivation commutators") {
    auto ring = make_ring({"x"});
    const Derivation<Rational> d(ring, {P(ring, "x^2")});
    CHECK(Derivation<Rational>::commutator(d, d).is_zero());

    // the T_1 data on k[z]: alpha21(z) = -2, alpha11(z) = -z
    auto zring = make_ring({"z"});
    const Derivation<Rational> a11(zring, {parse_poly<Rational>("-z", zring)});
    const Derivation<Rational> a21(zring, {parse_poly<Rational>("-2", zring)});
    // oracle: a21(-z) - a11(-2) = 2 - 0 = 2
    CHECK(Derivation<Rational>::commutator(a21, a11).image(0) ==
          parse_poly<Rational>("2", zring));

    // [d/dx, x d/dx] = d/dx
    const Derivation<Rational> ddx(ring, {P(ring, "1")});
    const Derivation<Rational> xddx(ring, {P(ring, "x")});
    const auto comm = Derivation<Rational>::commutator(ddx, xddx);
    CHECK(comm.image(0) == P(ring, "1"));
}

TEST_CASE("derivations satisfy the Leibniz rule on random inputs") {
    testutil::Rng rng(2718);
    auto ring = make_ring({"x", "y"});
    for (int round = 0; round < 100; ++round) {
        const Derivation<Rational> d(ring, {rng.poly<Rational>(ring), rng.poly<Rational>(ring)});
        const Poly<Rational> f = rng.poly<Rational>(ring);
        const Poly<Rational> g = rng.poly<Rational>(ring);
        CHECK(d.apply(f * g) == f * d.apply(g) + g * d.apply(f));
    }
}

TEST_CASE("commutator of derivations is a derivation") {
    testutil::Rng rng(314);
    auto ring = make_ring({"x", "y"});
    for (int round = 0; round < 50; ++round) {
        const Derivation<Rational> d1(ring, {rng.poly<Rational>(ring), rng.poly<Rational>(ring)});
        const Derivation<Rational> d2(ring, {rng.poly<Rational>(ring), rng.poly<Rational>(ring)});
        const auto comm = Derivation<Rational>::commutator(d1, d2);
        const Poly<Rational> f = rng.poly<Rational>(ring);
        const Poly<Rational> g = rng.poly<Rational>(ring);
        CHECK(comm.apply(f * g) == f * comm.apply(g) + g * comm.apply(f));
        // and it agrees with d1(d2(.)) - d2(d1(.)) on arbitrary polynomials
        CHECK(comm.apply(f) == d1.apply(d2.apply(f)) - d2.apply(d1.apply(f)));
    }
}

TEST_CASE("substitution") {
    auto ring = make_ring({"x", "y"});
    auto target = make_ring({"u"});
    std::vector<Poly<Rational>> images{parse_poly<Rational>("u+1", target),
                                       parse_poly<Rational>("u-1", target)};
    CHECK(P(ring, "x*y").substitute(images) == parse_poly<Rational>("u^2 - 1", target));
}

TEST_CASE("lifting into an extension ring") {
    auto ring = make_ring({"x"});
    auto big = make_ring({"x", "y1"});
    CHECK(P(ring, "x^2 + 1").lifted(big) == parse_poly<Rational>("x^2 + 1", big));
    auto wrong = make_ring({"y1", "x"});
    CHECK_THROWS_AS(P(ring, "x").lifted(wrong), RingMismatchError);
}

TEST_CASE("expression parser errors") {
    auto ring = make_ring({"x"});
    CHECK_THROWS_AS(P(ring, "x +"), ParseError);
    CHECK_THROWS_AS(P(ring, "q"), ParseError);
    CHECK_THROWS_AS(P(ring, "1/x"), ParseError);
    CHECK_THROWS_AS(P(ring, "t"), ParseError); // rational scalars have no t
    CHECK_THROWS_AS(P(ring, "x^-1"), ParseError);
    CHECK(parse_poly<RatFunc>("(t - 1/t)*x", ring) ==
          parse_poly<RatFunc>("t*x - (1/t)*x", ring));
}
