#include "orbiflop/factored.hpp"

#include <doctest.h>

#include <random>

using namespace orbiflop;

namespace {

FactoredRat w(long long a, long long b, long long e = 1) { return FactoredRat::from_weight(wf(a, b), e); }

// Random factored values over a small pool of nonzero forms; exponents small.
FactoredRat random_value(std::mt19937& rng) {
    static const WeightForm pool[] = {wf(1, 0), wf(0, 1), wf(1, 1), wf(-1, 2), wf(2, 3), wf(1, -1), wf(3, 1)};
    std::uniform_int_distribution<int> npick(0, 4), epick(-3, 3), spick(1, 9);
    FactoredRat f = FactoredRat::from_scalar(rat_of(spick(rng)));
    int n = npick(rng);
    for (int i = 0; i < n; ++i) {
        int e = epick(rng);
        if (e == 0) continue;
        f *= FactoredRat::from_weight(pool[static_cast<size_t>(rng() % 7)], e);
    }
    return f;
}

}  // namespace

TEST_CASE("product cancels inverse pairs") {
    FactoredRat lam = w(1, 0);
    CHECK(lam * lam.inverse() == FactoredRat::one());
}

TEST_CASE("exponents of identical factors add") {
    FactoredRat f = FactoredRat::from_scalar(rat_of(2)) * w(0, 1);
    FactoredRat g = FactoredRat::from_scalar(rat_of(3)) * w(0, 1, 2);
    FactoredRat expect = FactoredRat::from_scalar(rat_of(6)) * w(0, 1, 3);
    CHECK(f * g == expect);
}

TEST_CASE("mixed factors stay factored and evaluate correctly") {
    FactoredRat f = w(-1, 2) * w(1, 2);
    CHECK(f.eval(rat_of(1), rat_of(1)) == rat_of(3));  // (-1+2)(1+2)
    CHECK(f.factors().size() == 2);
}

TEST_CASE("proportional forms merge into one factor") {
    // 2u and u are proportional: net exponent zero, scalar 2 remains.
    FactoredRat f = w(0, 2) * w(0, 1, -1);
    CHECK(f == FactoredRat::from_scalar(rat_of(2)));
    CHECK(f.u_valuation() == 0);
}

TEST_CASE("u-valuation") {
    CHECK((w(0, 1) * w(1, 0, -3)).u_valuation() == 1);
    CHECK((FactoredRat::from_scalar(rat_of(5)) * w(-1, 2, 2)).u_valuation() == 0);
    CHECK_THROWS_AS(FactoredRat::zero().u_valuation(), std::domain_error);
}

TEST_CASE("limit at u = 0") {
    auto lim1 = (w(0, 1) * w(1, 0)).limit_u0();
    CHECK(lim1.kind == LimitU0::Kind::Zero);

    auto lim2 = w(-1, 2).limit_u0();
    REQUIRE(lim2.kind == LimitU0::Kind::Value);
    CHECK(lim2.value == w(-1, 0));

    auto lim3 = (w(0, 1, -1) * w(1, 1)).limit_u0();
    CHECK(lim3.kind == LimitU0::Kind::Pole);

    auto lim4 = (w(2, 3) * w(1, -1) * FactoredRat::from_opaque("psi")).limit_u0();
    REQUIRE(lim4.kind == LimitU0::Kind::Value);
    CHECK(lim4.value.opaques().count("psi") == 1);
}

TEST_CASE("canonical text form round-trips byte-identically") {
    FactoredRat f = FactoredRat::from_scalar(rat_of(-3, 2)) * w(-1, 2) * w(0, 1, 2) *
                    FactoredRat::from_opaque("DM(P;1;1)", -1);
    std::string text = f.str();
    FactoredRat g = FactoredRat::parse(text);
    CHECK(g == f);
    CHECK(g.str() == text);
    CHECK(FactoredRat::parse("0") == FactoredRat::zero());
    CHECK(FactoredRat::zero().str() == "0");
}

TEST_CASE("product is commutative and associative in canonical form") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        FactoredRat a = random_value(rng), b = random_value(rng), c = random_value(rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("u-valuation is additive and evaluation is multiplicative") {
    std::mt19937 rng(11);
    const Rat lam0 = rat_of(5, 3), u0 = rat_of(7, 11);
    for (int trial = 0; trial < 200; ++trial) {
        FactoredRat a = random_value(rng), b = random_value(rng);
        CHECK(a.u_valuation() + b.u_valuation() == (a * b).u_valuation());
        CHECK(a.eval(lam0, u0) * b.eval(lam0, u0) == (a * b).eval(lam0, u0));
    }
}

TEST_CASE("valuation matches the decay rate under halving u") {
    // Probe at lambda = 1, u in {1/4, 1/8}: the ratio between successive
    // values approaches 2^v; the pool below keeps it within one dyadic step.
    auto pow2 = [](int k) {
        Rat p = 1;
        for (int i = 0; i < (k >= 0 ? k : -k); ++i) p *= 2;
        return k >= 0 ? p : Rat(1) / p;
    };
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> vpick(-3, 3), epick(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        int v = vpick(rng);
        FactoredRat f = FactoredRat::from_weight(wf(0, 1), v == 0 ? 1 : v);
        if (v == 0) f *= FactoredRat::from_weight(wf(0, 1), -1);  // canonical merge to valuation 0
        int mixed = 0;
        for (int i = 0; i < 3; ++i) {
            int e = epick(rng);
            if (mixed + std::abs(e) > 6) break;
            mixed += std::abs(e);
            if (e != 0) f *= FactoredRat::from_weight(wf(1, 1), e);
        }
        int el = epick(rng);
        if (el != 0) f *= FactoredRat::from_weight(wf(1, 0), el);
        REQUIRE(f.u_valuation() == v);
        Rat r2 = f.eval(rat_of(1), rat_of(1, 4)) / f.eval(rat_of(1), rat_of(1, 8));
        if (r2 < 0) r2 = -r2;
        CHECK(r2 >= pow2(v - 1));
        CHECK(r2 <= pow2(v + 1));
    }
}
