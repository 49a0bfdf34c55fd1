#include "pdcrystal/sen.hpp"

namespace pdcrystal {

namespace {

void require_unit(const Rational& a) {
    if (a == 0) throw NonUnitError("sen: twist parameter a must be nonzero");
}

void require_shape(const SenElement& x) {
    if (x.n_max < 0 || static_cast<int>(x.c.size()) != x.n_max + 1)
        throw Error("sen: coefficient count must be n_max + 1");
    for (const auto& v : x.c)
        if (v.m != x.m) throw TruncationMismatch("sen: coefficient truncation mismatch");
}

std::vector<TruncatedSeries> unflatten_coords(const std::vector<Rational>& v, int r, int m) {
    std::vector<TruncatedSeries> out(static_cast<size_t>(r), TruncatedSeries(m));
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < r; ++j)
            out[static_cast<size_t>(j)].c[static_cast<size_t>(k)] =
                v[static_cast<size_t>(k) * r + j];
    return out;
}

std::vector<Rational> apply_rat(const RatMat& f, const std::vector<Rational>& v) {
    std::vector<Rational> out(static_cast<size_t>(f.rows), Rational(0));
    for (int i = 0; i < f.rows; ++i)
        for (int j = 0; j < f.cols; ++j)
            if (f.at(i, j) != 0 && v[static_cast<size_t>(j)] != 0)
                out[static_cast<size_t>(i)] += f.at(i, j) * v[static_cast<size_t>(j)];
    return out;
}

}  // namespace

SenElement sen_zero(int n_max, int m) {
    SenElement x;
    x.n_max = n_max;
    x.m = m;
    x.c.assign(static_cast<size_t>(n_max) + 1, TruncatedSeries(m));
    require_shape(x);
    return x;
}

SenElement sen_make(int n_max, int m, std::vector<TruncatedSeries> coeffs) {
    SenElement x;
    x.n_max = n_max;
    x.m = m;
    x.c = std::move(coeffs);
    require_shape(x);
    return x;
}

bool sen_is_zero(const SenElement& x) {
    for (const auto& v : x.c)
        if (!ts_is_zero(v)) return false;
    return true;
}

std::string format_sen(const SenElement& x) {
    std::string s;
    for (int n = 0; n <= x.n_max; ++n) {
        if (ts_is_zero(x.c[static_cast<size_t>(n)])) continue;
        if (!s.empty()) s += " + ";
        s += "(" + format_series(x.c[static_cast<size_t>(n)]) + ")*X^[" + std::to_string(n) + "]";
    }
    return s.empty() ? "0" : s;
}

SenElement sen_phi(const SenElement& x, const Rational& a) {
    require_unit(a);
    require_shape(x);
    SenElement out = sen_zero(x.n_max, x.m);
    Rational inv_a = Rational(1) / a;
    for (int n = 0; n <= x.n_max; ++n) {
        TruncatedSeries v =
            ts_sub(euler_derivation(x.c[static_cast<size_t>(n)]),
                   ts_scale(Rational(n), x.c[static_cast<size_t>(n)]));
        if (n < x.n_max) v = ts_sub(v, ts_scale(inv_a, x.c[static_cast<size_t>(n) + 1]));
        out.c[static_cast<size_t>(n)] = std::move(v);
    }
    return out;
}

SenElement sen_phi_xonly(const SenElement& x, const Rational& a) {
    require_unit(a);
    require_shape(x);
    SenElement out = sen_zero(x.n_max, x.m);
    Rational inv_a = Rational(1) / a;
    for (int n = 0; n <= x.n_max; ++n) {
        TruncatedSeries v = ts_scale(Rational(-n), x.c[static_cast<size_t>(n)]);
        if (n < x.n_max) v = ts_sub(v, ts_scale(inv_a, x.c[static_cast<size_t>(n) + 1]));
        out.c[static_cast<size_t>(n)] = std::move(v);
    }
    return out;
}

SenElement sen_inclusion(const TruncatedSeries& c, const Rational& a, int n_max) {
    SenElement out = sen_zero(n_max, c.m);
    for (int j = 0; j < c.m; ++j) {
        const Rational& cj = c.c[static_cast<size_t>(j)];
        if (cj == 0) continue;
        Rational falling(1), apow(1);
        for (int n = 0; n <= j && n <= n_max; ++n) {
            // eps^j (1 + a X)^j = sum_n a^n j!/(j-n)! eps^j X^[n]
            out.c[static_cast<size_t>(n)].c[static_cast<size_t>(j)] += cj * apow * falling;
            falling *= (j - n);
            apow *= a;
        }
    }
    return out;
}

SenSolveResult sen_solve(const SenElement& b, const Rational& a) {
    require_unit(a);
    require_shape(b);
    SenSolveResult res;
    res.f = sen_zero(b.n_max, b.m);
    for (int n = 0; n < b.n_max; ++n) {
        const TruncatedSeries& fn = res.f.c[static_cast<size_t>(n)];
        TruncatedSeries next = ts_sub(ts_sub(euler_derivation(fn), ts_scale(Rational(n), fn)),
                                      b.c[static_cast<size_t>(n)]);
        res.f.c[static_cast<size_t>(n) + 1] = ts_scale(a, next);
    }
    const TruncatedSeries& top = res.f.c[static_cast<size_t>(b.n_max)];
    res.residual = ts_sub(b.c[static_cast<size_t>(b.n_max)],
                          ts_sub(euler_derivation(top), ts_scale(Rational(b.n_max), top)));
    return res;
}

CheckResult check_sen_kernel(const Rational& a, int n_max, int m) {
    Timer timer;
    CheckResult res;
    res.name = "sen-kernel(n_max=" + std::to_string(n_max) + ", m=" + std::to_string(m) + ")";
    require_unit(a);
    if (n_max < m - 1) throw Error("check_sen_kernel: requires n_max >= m - 1");
    auto fail = [&](const std::string& wit) {
        res.status = CheckStatus::Fail;
        res.witness = wit;
        res.ms = timer.ms();
        return res;
    };

    const int dim = (n_max + 1) * m;
    auto flat_index = [&](int n, int k) { return n * m + k; };

    // matrix of the truncated operator in the basis eps^k X^[n]
    RatMat op(dim, dim, Rational(0));
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k < m; ++k) {
            SenElement basis = sen_zero(n_max, m);
            basis.c[static_cast<size_t>(n)] = ts_eps(m, k);
            SenElement img = sen_phi(basis, a);
            for (int nn = 0; nn <= n_max; ++nn)
                for (int kk = 0; kk < m; ++kk)
                    op.at(flat_index(nn, kk), flat_index(n, k)) =
                        img.c[static_cast<size_t>(nn)].c[static_cast<size_t>(kk)];
        }
    int kernel_dim = dim - rat_rank(op);
    if (kernel_dim != m)
        return fail("kernel dimension " + std::to_string(kernel_dim) + " != m");

    // the inclusion images of eps^0..eps^{m-1} are killed and independent
    RatMat stacked(dim, m, Rational(0));
    for (int j = 0; j < m; ++j) {
        SenElement incl = sen_inclusion(ts_eps(m, j), a, n_max);
        SenElement img = sen_phi(incl, a);
        if (!sen_is_zero(img))
            return fail("inclusion of eps^" + std::to_string(j) +
                        " not in kernel: " + format_sen(img));
        for (int n = 0; n <= n_max; ++n)
            for (int k = 0; k < m; ++k)
                stacked.at(flat_index(n, k), j) =
                    incl.c[static_cast<size_t>(n)].c[static_cast<size_t>(k)];
    }
    if (rat_rank(stacked) != m) return fail("inclusion images are linearly dependent");
    res.ms = timer.ms();
    return res;
}

CheckResult verify_sen_exactness(const CrystalSpec& spec, int n_max, const ValuationConfig& cfg,
                                 long long cutoff) {
    Timer timer;
    CheckResult res;
    res.name = "sen-exactness(n_max=" + std::to_string(n_max) + ")";
    validate_spec_shape(spec);
    if (!spec.phi) throw Error("verify_sen_exactness: requires an arithmetic operator");
    require_unit(spec.a);

    SmallnessCertificate cert = certify_a_small(*spec.phi, spec.a, cfg, n_max + 1, cutoff);
    if (cert.mode != SmallnessMode::ExactVanishing) {
        res.status = CheckStatus::Inconclusive;
        res.witness = "operator products do not vanish exactly within the window: " +
                      cert.details;
        res.ms = timer.ms();
        return res;
    }

    const int r = spec.r, m = spec.m, dim = r * m;
    RatMat phi_flat = flatten_connection_op(*spec.phi);

    // P_n = prod_{l<n} (a PHI - a l); P_{n_max+1} = 0 by the certificate
    std::vector<RatMat> P;
    P.push_back(rat_identity(dim));
    for (int n = 0; n < n_max; ++n) {
        RatMat step = phi_flat;
        for (int i = 0; i < dim; ++i) step.at(i, i) -= n;
        P.push_back(mat_scale(spec.a, mat_mul(step, P.back())));
    }

    auto op_of = [&](const std::vector<Rational>& x) {
        std::vector<SenElement> comps(static_cast<size_t>(r), sen_zero(n_max, m));
        for (int n = 0; n <= n_max; ++n) {
            auto coords = unflatten_coords(apply_rat(P[static_cast<size_t>(n)], x), r, m);
            for (int j = 0; j < r; ++j)
                comps[static_cast<size_t>(j)].c[static_cast<size_t>(n)] =
                    coords[static_cast<size_t>(j)];
        }
        return comps;
    };

    for (int b = 0; b < dim; ++b) {
        std::vector<Rational> x(static_cast<size_t>(dim), Rational(0));
        x[static_cast<size_t>(b)] = 1;
        auto op_x = op_of(x);
        auto op_phix = op_of(apply_rat(phi_flat, x));
        for (int j = 0; j < r; ++j) {
            SenElement lhs = sen_phi_xonly(op_x[static_cast<size_t>(j)], spec.a);
            for (auto& v : lhs.c) v = ts_neg(v);
            if (!(lhs == op_phix[static_cast<size_t>(j)])) {
                res.status = CheckStatus::Fail;
                res.witness = "intertwining fails on basis vector " + std::to_string(b) +
                              ", component " + std::to_string(j) + ": " + format_sen(lhs) +
                              " vs " + format_sen(op_phix[static_cast<size_t>(j)]);
                res.ms = timer.ms();
                return res;
            }
        }
    }
    res.ms = timer.ms();
    return res;
}

}  // namespace pdcrystal
