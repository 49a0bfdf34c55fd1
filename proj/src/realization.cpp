#include "pdcrystal/realization.hpp"

#include <algorithm>

namespace pdcrystal {

namespace {

// First i in [0, n_window] with P_i = prod_{l<i}(a PHI - a l) exactly zero, or -1.
int vanishing_index(const RatMat& phi_flat, const Rational& a, int n_window) {
    RatMat p = rat_identity(phi_flat.rows);
    for (int n = 0; n <= n_window; ++n) {
        if (mat_is_zero(p)) return n;
        RatMat step = phi_flat;
        for (int i = 0; i < step.rows; ++i) step.at(i, i) -= n;
        p = mat_scale(a, mat_mul(step, p));
    }
    return -1;
}

// Number of terms of sum_i x^[i] P_i that can be nonzero; throws when unbounded.
int series_cap(const RatMat& phi_flat, const Rational& a, const TruncatedSeries& x, int m,
               int n_window) {
    int n_star = vanishing_index(phi_flat, a, n_window);
    bool infinitesimal = (x.c[0] == 0);
    if (n_star < 0 && !infinitesimal)
        throw Error("realize: series not finite within truncation");
    if (n_star < 0) return m;
    return infinitesimal ? std::min(n_star, m) : n_star;
}

RatMat exp_nilpotent(const RatMat& b) {
    const int n = b.rows;
    RatMat acc = rat_identity(n);
    RatMat pw = rat_identity(n);
    Rational inv_fact(1);
    for (int k = 1; k <= n; ++k) {
        pw = mat_mul(pw, b);
        if (mat_is_zero(pw)) return acc;
        if (k == n) throw Error("realize: exponent matrix is not nilpotent");
        inv_fact /= k;
        acc = mat_add(acc, mat_scale(inv_fact, pw));
    }
    return acc;
}

void require_arithmetic(const CrystalSpec& spec) {
    validate_spec_shape(spec);
    if (!spec.phi) throw Error("realize: absolute flavors only");
    if (spec.a == 0) throw NonUnitError("realize: twist parameter a must be nonzero");
}

// S_shift = sum_{i < cap} flat(x^[i]-mult) prod_{l<i}(a (PHI - shift) - a l).
RatMat arithmetic_series(const RatMat& phi_flat, const Rational& a, const TruncatedSeries& x,
                         int r, int shift, int cap) {
    RatMat s(phi_flat.rows, phi_flat.cols, Rational(0));
    RatMat p = rat_identity(phi_flat.rows);
    for (int i = 0; i < cap; ++i) {
        TruncatedSeries xi = ts_divided_power(x, i);
        if (!ts_is_zero(xi)) s = mat_add(s, mat_mul(flatten_scalar_mult(xi, r), p));
        RatMat step = phi_flat;
        for (int j = 0; j < step.rows; ++j) step.at(j, j) -= (shift + i);
        p = mat_scale(a, mat_mul(step, p));
    }
    return s;
}

}  // namespace

GroupElementData identity_element(int d, int m) {
    GroupElementData g;
    g.nvec.assign(static_cast<size_t>(d), 0);
    g.gE_over_E = ts_const(m, 1);
    g.t_over_E = ts_const(m, 1);
    return g;
}

SeriesMat realize(const CrystalSpec& spec, const GroupElementData& g, int n_window) {
    require_arithmetic(spec);
    if (static_cast<int>(g.nvec.size()) != spec.d)
        throw Error("realize: one translation integer per geometric direction required");
    if (g.gE_over_E.m != spec.m || g.t_over_E.m != spec.m)
        throw TruncationMismatch("realize: group data truncation mismatch");
    if (!ts_is_unit(g.gE_over_E) || !ts_is_unit(g.t_over_E))
        throw NonUnitError("realize: gE_over_E and t_over_E must be units");

    TruncatedSeries x =
        ts_scale(Rational(1) / spec.a, ts_sub(g.gE_over_E, ts_const(spec.m, 1)));
    RatMat phi_flat = flatten_connection_op(*spec.phi);
    int cap = series_cap(phi_flat, spec.a, x, spec.m, n_window);
    RatMat result = arithmetic_series(phi_flat, spec.a, x, spec.r, 0, cap);

    SeriesMat b(spec.r, spec.r, TruncatedSeries(spec.m));
    bool moved = false;
    for (int s = 0; s < spec.d; ++s)
        if (g.nvec[static_cast<size_t>(s)]) {
            b = mat_add(b, mat_scale(Rational(g.nvec[static_cast<size_t>(s)]),
                                     spec.N[static_cast<size_t>(s)]));
            moved = true;
        }
    if (moved) {
        b = mat_scale(g.t_over_E, b);
        result = mat_mul(exp_nilpotent(flatten_series_mat(b)), result);
    }
    return unflatten_on_basis(result, spec.r, spec.m);
}

CheckResult check_realization_intertwining(const CrystalSpec& spec, const TruncatedSeries& x_g,
                                           int n_window) {
    Timer timer;
    CheckResult res;
    res.name = "realization-intertwining";
    require_arithmetic(spec);
    if (x_g.m != spec.m) throw TruncationMismatch("check_realization_intertwining: bad x_g");

    RatMat phi_flat = flatten_connection_op(*spec.phi);
    int cap = series_cap(phi_flat, spec.a, x_g, spec.m, n_window);
    RatMat s0 = arithmetic_series(phi_flat, spec.a, x_g, spec.r, 0, cap);
    RatMat s1 = arithmetic_series(phi_flat, spec.a, x_g, spec.r, 1, cap);
    for (int s = 0; s < spec.d; ++s) {
        RatMat n_flat = flatten_series_mat(spec.N[static_cast<size_t>(s)]);
        if (!(mat_mul(s1, n_flat) == mat_mul(n_flat, s0))) {
            res.status = CheckStatus::Fail;
            res.witness = "S_1 N != N S_0 in direction " + std::to_string(s + 1);
            break;
        }
    }
    res.ms = timer.ms();
    return res;
}

}  // namespace pdcrystal
