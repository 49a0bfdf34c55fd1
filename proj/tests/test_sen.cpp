#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pdcrystal/sen.hpp"

using namespace pdcrystal;

namespace {

Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

SeriesMat zmat(int r, int m) { return SeriesMat(r, r, TruncatedSeries(m)); }

}  // namespace

TEST_CASE("line operator pins") {
    Rational a(3);
    // phi(X) = -X - 1/a
    SenElement x = sen_zero(2, 1);
    x.c[1] = ts_const(1, 1);
    SenElement y = sen_phi(x, a);
    CHECK(y.c[0] == ts_const(1, Rational(-1) / a));
    CHECK(y.c[1] == ts_const(1, -1));
    CHECK(ts_is_zero(y.c[2]));

    // the euler part cancels -n exactly on eps X^[1]
    SenElement xe = sen_zero(2, 2);
    xe.c[1] = ts_eps(2);
    SenElement ye = sen_phi(xe, a);
    CHECK(ye.c[0] == ts_scale(Rational(-1) / a, ts_eps(2)));
    CHECK(ts_is_zero(ye.c[1]));

    // the x-only operator ignores euler
    SenElement yx = sen_phi_xonly(xe, a);
    CHECK(yx.c[0] == ts_scale(Rational(-1) / a, ts_eps(2)));
    CHECK(yx.c[1] == ts_neg(ts_eps(2)));
}

TEST_CASE("factorial solution of the model equation") {
    int n_max = 20;
    SenElement b = sen_zero(n_max, 1);
    b.c[1] = ts_const(1, 1);
    auto res = sen_solve(b, Rational(-1));
    CHECK(ts_is_zero(res.f.c[0]));
    CHECK(ts_is_zero(res.f.c[1]));
    for (int n = 2; n <= n_max; ++n) CHECK(res.f.c[static_cast<size_t>(n)] ==
                                           ts_const(1, factorial(n - 1)));
    CHECK(res.residual == ts_const(1, factorial(20)));
}

TEST_CASE("solver matches the operator below the top degree") {
    int n_max = 6, m = 3;
    Rational a(2, 3);
    SenElement b = sen_zero(n_max, m);
    for (int n = 0; n <= n_max; ++n)
        b.c[static_cast<size_t>(n)] =
            ts_make(m, {Rational(n - 2), Rational(1, n + 1), Rational(3 * n)});
    auto res = sen_solve(b, a);
    SenElement img = sen_phi(res.f, a);
    for (int n = 0; n < n_max; ++n) CHECK(img.c[static_cast<size_t>(n)] == b.c[static_cast<size_t>(n)]);
    CHECK(res.residual == ts_sub(b.c[static_cast<size_t>(n_max)], img.c[static_cast<size_t>(n_max)]));
}

TEST_CASE("inclusion expands the rescaled coefficient generator") {
    Rational a(3);
    SenElement incl = sen_inclusion(ts_eps(2), a, 2);
    CHECK(incl.c[0] == ts_eps(2));
    CHECK(incl.c[1] == ts_scale(a, ts_eps(2)));
    CHECK(ts_is_zero(incl.c[2]));
    CHECK(sen_is_zero(sen_phi(incl, a)));

    // at m = 1 the inclusion lands on constants
    SenElement c0 = sen_inclusion(ts_const(1, 5), a, 3);
    CHECK(c0.c[0] == ts_const(1, 5));
    for (int n = 1; n <= 3; ++n) CHECK(ts_is_zero(c0.c[static_cast<size_t>(n)]));
}

TEST_CASE("kernel of the truncated operator is the inclusion image") {
    CHECK(check_sen_kernel(Rational(2), 5, 3).status == CheckStatus::Pass);
    CHECK(check_sen_kernel(Rational(-1), 3, 1).status == CheckStatus::Pass);
    CHECK(check_sen_kernel(Rational(1, 2), 2, 3).status == CheckStatus::Pass);  // n_max = m - 1
    CHECK_THROWS_AS(check_sen_kernel(Rational(1), 1, 3), Error);
}

TEST_CASE("intertwining for exactly vanishing operators") {
    ValuationConfig cfg{BigInt(5)};
    int m = 2;
    SeriesMat phi = zmat(2, m);
    phi.at(0, 0) = ts_const(m, 1);
    auto spec = make_crystal_spec(arithmetic_point(Rational(2)), 2, m, Rational(2), {}, phi);
    auto res = verify_sen_exactness(spec, 8, cfg, 40);
    INFO(res.witness);
    CHECK(res.status == CheckStatus::Pass);

    // eps-dependent arithmetic operator, still diagonalizable with integer spectrum
    SeriesMat phi2 = zmat(2, m);
    phi2.at(0, 0) = ts_inv(ts_add(ts_const(m, 1), ts_eps(m)));
    auto spec2 = make_crystal_spec(arithmetic_point(Rational(1)), 2, m, Rational(1), {}, phi2);
    auto res2 = verify_sen_exactness(spec2, 6, cfg, 40);
    INFO(res2.witness);
    CHECK(res2.status == CheckStatus::Pass);
}

TEST_CASE("non-vanishing operator products are refused, not asserted") {
    ValuationConfig cfg{BigInt(5)};
    SeriesMat phi = zmat(2, 1);
    phi.at(0, 0) = ts_const(1, 1);
    phi.at(0, 1) = ts_const(1, 1);
    phi.at(1, 1) = ts_const(1, 1);  // Jordan block: products never vanish
    auto spec = make_crystal_spec(arithmetic_point(Rational(1)), 2, 1, Rational(1), {}, phi);
    auto res = verify_sen_exactness(spec, 6, cfg, 10);
    CHECK(res.status == CheckStatus::Inconclusive);
    CHECK(!res.witness.empty());
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(sen_phi(sen_zero(2, 1), Rational(0)), NonUnitError);
    CHECK_THROWS_AS(sen_make(2, 1, {ts_const(1, 1)}), Error);
    CHECK_THROWS_AS(sen_make(1, 2, {ts_const(2, 1), ts_const(1, 1)}), TruncationMismatch);
}
