#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pdcrystal/pd.hpp"

using namespace pdcrystal;

namespace {

PDElement random_scalar(const PDRingPtr& ring, std::mt19937_64& rng, bool zero_const = false) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), pick(0, 2);
    PDElement x = pd_zero(ring);
    size_t nv = ring->vars.size();
    std::vector<Expo> expos;
    Expo e(nv, 0);
    // enumerate a few random exponents within the bound
    for (int t = 0; t < 8; ++t) {
        Expo f(nv, 0);
        int budget = ring->bound;
        for (size_t v = 0; v < nv; ++v) {
            int g = std::uniform_int_distribution<int>(0, budget)(rng);
            f[v] = g;
            budget -= g;
        }
        if (zero_const && expo_total(f) == 0) continue;
        TruncatedSeries c(ring->m);
        for (int k = 0; k < ring->m; ++k) c.c[k] = Rational(num(rng), den(rng));
        SeriesMat cm(1, 1, c);
        pd_accumulate(x, f, cm);
    }
    return x;
}

}  // namespace

TEST_CASE("divided-power multiplication law") {
    auto ring = pd_ring({"X"}, 6, 1);
    auto x = pd_var(ring, 0);
    auto x2 = pd_mul(x, x);
    Expo e2{2};
    REQUIRE(pd_coeff(x2, e2) != nullptr);
    CHECK(pd_coeff(x2, e2)->at(0, 0) == ts_const(1, 2));  // X*X = 2 X^[2]
    // X^[a] X^[b] = C(a+b, a) X^[a+b]
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 6; ++b) {
            auto p = pd_mul(divided_power(x, a), divided_power(x, b));
            Expo e{a + b};
            if (a + b == 0) continue;
            REQUIRE(pd_coeff(p, e) != nullptr);
            CHECK(pd_coeff(p, e)->at(0, 0).c[0] == Rational(binomial(a + b, a)));
        }
}

TEST_CASE("truncation drops high-degree terms") {
    auto ring = pd_ring({"X", "Y"}, 3, 1);
    auto x = pd_var(ring, 0), y = pd_var(ring, 1);
    auto p = pd_mul(pd_mul(x, x), pd_mul(y, y));  // degree 4 > 3
    CHECK(pd_is_zero(p));
    CHECK(pd_is_zero(divided_power(x, 4)));
}

TEST_CASE("pinned inverse: (1+X)^{-1} at bound 2") {
    auto ring = pd_ring({"X"}, 2, 1);
    auto x = pd_var(ring, 0);
    auto inv = pd_inv_one_plus(x);
    auto expected = pd_add(pd_sub(pd_one(ring), x), pd_scale(Rational(2), divided_power(x, 2)));
    CHECK(inv == expected);
}

TEST_CASE("inverse is two-sided against 1+u on random elements") {
    std::mt19937_64 rng(5);
    auto ring = pd_ring({"X", "Y"}, 4, 2);
    for (int t = 0; t < 25; ++t) {
        auto u = random_scalar(ring, rng, /*zero_const=*/true);
        auto inv = pd_inv_one_plus(u);
        auto one_plus = pd_add(pd_one(ring), u);
        CHECK(pd_mul(one_plus, inv) == pd_one(ring));
        CHECK(pd_mul(inv, one_plus) == pd_one(ring));
    }
    CHECK_THROWS_AS(pd_inv_one_plus(pd_one(ring)), NonUnitError);
}

TEST_CASE("scalar ring axioms on random elements") {
    std::mt19937_64 rng(9);
    auto ring = pd_ring({"X", "Y"}, 4, 2);
    for (int t = 0; t < 20; ++t) {
        auto x = random_scalar(ring, rng), y = random_scalar(ring, rng),
             z = random_scalar(ring, rng);
        CHECK(pd_mul(x, y) == pd_mul(y, x));
        CHECK(pd_mul(pd_mul(x, y), z) == pd_mul(x, pd_mul(y, z)));
        CHECK(pd_mul(x, pd_add(y, z)) == pd_add(pd_mul(x, y), pd_mul(x, z)));
    }
}

TEST_CASE("divided_power agrees with powers over Q") {
    std::mt19937_64 rng(13);
    auto ring = pd_ring({"X", "Y"}, 5, 2);
    for (int t = 0; t < 10; ++t) {
        auto u = random_scalar(ring, rng, true);
        for (int k : {2, 3, 4}) {
            Rational kfact(1);
            for (int j = 2; j <= k; ++j) kfact *= j;
            CHECK(pd_scale(kfact, divided_power(u, k)) == pd_pow(u, k));
        }
    }
}

TEST_CASE("mixed rings are rejected") {
    auto r1 = pd_ring({"X"}, 3, 1), r2 = pd_ring({"X"}, 4, 1);
    CHECK_THROWS_AS(pd_mul(pd_var(r1, 0), pd_var(r2, 0)), TruncationMismatch);
}

TEST_CASE("operator-valued coefficients broadcast against scalars and keep order") {
    auto ring = pd_ring({"X"}, 3, 1);
    SeriesMat a(2, 2, TruncatedSeries(1)), b(2, 2, TruncatedSeries(1));
    a.at(0, 1) = ts_const(1, 1);                       // e_{12}
    b.at(1, 0) = ts_const(1, 1);                       // e_{21}
    auto ax = pd_const(ring, a);                       // constant operator coefficient
    auto bx = pd_mul(pd_const(ring, b), pd_var(ring, 0));  // e_{21} * X
    auto ab = pd_mul(ax, bx);
    auto ba = pd_mul(bx, ax);
    CHECK_FALSE(ab == ba);  // e12*e21 = e11 vs e21*e12 = e22
    Expo e1{1};
    CHECK(pd_coeff(ab, e1)->at(0, 0).c[0] == 1);
    CHECK(pd_coeff(ba, e1)->at(1, 1).c[0] == 1);
    // scalar broadcast
    auto s = pd_scale(Rational(3), pd_one(ring));
    CHECK(pd_mul(s, bx) == pd_scale(Rational(3), bx));
}
