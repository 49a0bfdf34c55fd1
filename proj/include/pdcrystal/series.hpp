#pragma once

#include <string>
#include <vector>

#include "pdcrystal/rational.hpp"

namespace pdcrystal {

// Element of T_m = K[eps]/eps^m, stored as the m coefficients of 1, eps, ..., eps^{m-1}.
// Every binary operation demands equal m; there is no implicit coercion between levels.
struct TruncatedSeries {
    int m = 1;
    std::vector<Rational> c;

    TruncatedSeries() : c(1) {}
    explicit TruncatedSeries(int m_) : m(m_), c(static_cast<size_t>(m_)) {
        if (m_ < 1) throw Error("TruncatedSeries: m must be >= 1");
    }

    bool operator==(const TruncatedSeries& o) const { return m == o.m && c == o.c; }
};

TruncatedSeries ts_make(int m, std::vector<Rational> coeffs);  // pads/validates to length m
TruncatedSeries ts_const(int m, const Rational& x);
TruncatedSeries ts_eps(int m, int k = 1);  // eps^k (zero when k >= m)

void ts_require_same_m(const TruncatedSeries& x, const TruncatedSeries& y);

TruncatedSeries ts_add(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries ts_sub(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries ts_neg(const TruncatedSeries& x);
TruncatedSeries ts_mul(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries ts_scale(const Rational& k, const TruncatedSeries& x);

bool ts_is_zero(const TruncatedSeries& x);
bool ts_is_unit(const TruncatedSeries& x);  // constant term nonzero

// Multiplicative inverse; throws NonUnitError when the constant term vanishes.
TruncatedSeries ts_inv(const TruncatedSeries& x);

// x^k / k! over the rationals.
TruncatedSeries ts_divided_power(const TruncatedSeries& x, int k);

// The derivation eps * d/deps (eps^k -> k eps^k).
TruncatedSeries euler_derivation(const TruncatedSeries& x);

// Minimal vp over all coefficients (kValInfinity for 0).
long long ts_vp(const TruncatedSeries& x, const ValuationConfig& cfg);

// Comma-separated rational coefficients, e.g. "1, -1/2, 0"; pads with zeros up to m.
TruncatedSeries parse_series(int m, const std::string& s);
std::string format_series(const TruncatedSeries& x);

}  // namespace pdcrystal
