#include "pdcrystal/expansion.hpp"

namespace pdcrystal {

PDElement neg_power_series(const PDElement& P, const PDElement& Z, const PDElement& Q) {
    if (pd_has_constant_term(Q))
        throw Error("neg_power_series: Q must have zero constant term");
    PDElement acc = pd_one(P.ring);
    PDElement factor_product = pd_one(P.ring);  // prod_{i<n} (P + iZ)
    PDElement qpow = pd_one(P.ring);            // Q^[n]
    for (int n = 1; n <= P.ring->bound; ++n) {
        factor_product = pd_mul(factor_product, pd_add(P, pd_scale(Rational(n - 1), Z)));
        qpow = pd_scale(Rational(1, n), pd_mul(qpow, Q));
        if (pd_is_zero(qpow) || pd_is_zero(factor_product)) break;
        acc = pd_add(acc, pd_mul(factor_product, qpow));
    }
    return acc;
}

PDElement neg_power_expand(const PDElement& Q, const SeriesMat& P, const TruncatedSeries& Z) {
    if (!(Q.rows == 1 && Q.cols == 1)) throw Error("neg_power_expand: Q must be scalar");
    if (P.rows != P.cols) throw Error("neg_power_expand: P must be square");
    if (pd_has_constant_term(Q))
        throw Error("neg_power_expand: Q must have zero constant term");
    if (!P.a.empty() && P.a[0].m != Q.ring->m)
        throw TruncationMismatch("neg_power_expand: coefficient m differs from ring m");
    const auto& ring = Q.ring;
    int r = P.rows;
    PDElement acc = pd_const(ring, series_identity(r, ring->m));
    SeriesMat factor_product = series_identity(r, ring->m);
    PDElement qpow = pd_one(ring);
    for (int n = 1; n <= ring->bound; ++n) {
        SeriesMat shifted = P;
        TruncatedSeries shift = ts_scale(Rational(n - 1), Z);
        for (int i = 0; i < r; ++i) shifted.at(i, i) = ts_add(shifted.at(i, i), shift);
        factor_product = mat_mul(factor_product, shifted);
        qpow = pd_scale(Rational(1, n), pd_mul(qpow, Q));
        if (pd_is_zero(qpow) || mat_is_zero(factor_product)) break;
        acc = pd_add(acc, pd_mul(pd_const(ring, factor_product), qpow));
    }
    return acc;
}


CheckResult verify_formal_identities(int bound) {
    Timer timer;
    CheckResult res;
    res.name = "formal-identities(bound=" + std::to_string(bound) + ")";

    {
        auto ring = pd_ring({"P", "Z", "Q1", "Q2"}, bound, 1);
        auto P = pd_var(ring, 0), Z = pd_var(ring, 1), Q1 = pd_var(ring, 2), Q2 = pd_var(ring, 3);
        auto lhs = pd_mul(neg_power_series(P, Z, Q1), neg_power_series(P, Z, Q2));
        auto composite = pd_sub(pd_add(Q1, Q2), pd_mul(Z, pd_mul(Q1, Q2)));
        auto rhs = neg_power_series(P, Z, composite);
        if (!(lhs == rhs)) {
            res.status = CheckStatus::Fail;
            res.witness = "multiplicativity in Q: " + pd_first_difference(lhs, rhs);
            res.ms = timer.ms();
            return res;
        }
    }
    {
        auto ring = pd_ring({"P1", "P2", "Z", "Q"}, bound, 1);
        auto P1 = pd_var(ring, 0), P2 = pd_var(ring, 1), Z = pd_var(ring, 2), Q = pd_var(ring, 3);
        auto lhs = pd_mul(neg_power_series(P1, Z, Q), neg_power_series(P2, Z, Q));
        auto rhs = neg_power_series(pd_add(P1, P2), Z, Q);
        if (!(lhs == rhs)) {
            res.status = CheckStatus::Fail;
            res.witness = "additivity in P: " + pd_first_difference(lhs, rhs);
            res.ms = timer.ms();
            return res;
        }
    }
    res.ms = timer.ms();
    return res;
}

}  // namespace pdcrystal
