#pragma once

#include <string>
#include <vector>

#include "pdcrystal/crystal.hpp"

namespace pdcrystal {

// Element sum_{n <= n_max} c_n X^[n] of the divided-power line over T_m.
struct SenElement {
    int n_max = 0;
    int m = 1;
    std::vector<TruncatedSeries> c;  // size n_max + 1, c[n] multiplies X^[n]

    bool operator==(const SenElement& o) const = default;
};

SenElement sen_zero(int n_max, int m);
SenElement sen_make(int n_max, int m, std::vector<TruncatedSeries> coeffs);
bool sen_is_zero(const SenElement& x);
std::string format_sen(const SenElement& x);

// The line operator: c X^[n] -> euler(c) X^[n] - n c X^[n] - (c/a) X^[n-1].
SenElement sen_phi(const SenElement& x, const Rational& a);

// Its coefficient-inert part: c X^[n] -> -n c X^[n] - (c/a) X^[n-1].
SenElement sen_phi_xonly(const SenElement& x, const Rational& a);

// The substitution c(eps) -> c(eps (1 + a X)) expanded in divided powers; lands in the
// kernel of sen_phi (exactly, once n_max >= m - 1).
SenElement sen_inclusion(const TruncatedSeries& c, const Rational& a, int n_max);

struct SenSolveResult {
    SenElement f;              // constant-free; sen_phi(f) = b in all degrees below n_max
    TruncatedSeries residual;  // top-degree mismatch b_top - sen_phi(f)_top
};

// Degreewise back-substitution f_{n+1} = a (euler(f_n) - n f_n - b_n) from f_0 = 0.
SenSolveResult sen_solve(const SenElement& b, const Rational& a);

// Exact kernel of the truncated operator: dimension m, spanned by the inclusion images of
// eps^0 .. eps^{m-1}. Requires n_max >= m - 1.
CheckResult check_sen_kernel(const Rational& a, int n_max, int m);

// The intertwining -phi_xonly(Op(x)) = Op(PHI x) for every flattened basis vector x, where
// Op(x) = sum_n coords(P_n x) X^[n] componentwise and P_n = prod_{l<n} (a PHI - a l), PHI the
// flattened phi + euler. Exact when the product sequence vanishes inside the window
// (certified first); inconclusive otherwise.
CheckResult verify_sen_exactness(const CrystalSpec& spec, int n_max, const ValuationConfig& cfg,
                                 long long cutoff);

}  // namespace pdcrystal
