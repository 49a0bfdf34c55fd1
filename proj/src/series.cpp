#include "pdcrystal/series.hpp"

#include <sstream>

namespace pdcrystal {

TruncatedSeries ts_make(int m, std::vector<Rational> coeffs) {
    if (m < 1) throw Error("ts_make: m must be >= 1");
    if (static_cast<int>(coeffs.size()) > m)
        throw Error("ts_make: more coefficients than truncation order");
    TruncatedSeries s(m);
    for (size_t i = 0; i < coeffs.size(); ++i) s.c[i] = std::move(coeffs[i]);
    return s;
}

TruncatedSeries ts_const(int m, const Rational& x) {
    TruncatedSeries s(m);
    s.c[0] = x;
    return s;
}

TruncatedSeries ts_eps(int m, int k) {
    TruncatedSeries s(m);
    if (k >= 0 && k < m) s.c[static_cast<size_t>(k)] = 1;
    return s;
}

void ts_require_same_m(const TruncatedSeries& x, const TruncatedSeries& y) {
    if (x.m != y.m)
        throw TruncationMismatch("series truncation levels differ: " + std::to_string(x.m) +
                                 " vs " + std::to_string(y.m));
}

TruncatedSeries ts_add(const TruncatedSeries& x, const TruncatedSeries& y) {
    ts_require_same_m(x, y);
    TruncatedSeries r(x.m);
    for (int k = 0; k < x.m; ++k) r.c[k] = x.c[k] + y.c[k];
    return r;
}

TruncatedSeries ts_sub(const TruncatedSeries& x, const TruncatedSeries& y) {
    ts_require_same_m(x, y);
    TruncatedSeries r(x.m);
    for (int k = 0; k < x.m; ++k) r.c[k] = x.c[k] - y.c[k];
    return r;
}

TruncatedSeries ts_neg(const TruncatedSeries& x) {
    TruncatedSeries r(x.m);
    for (int k = 0; k < x.m; ++k) r.c[k] = -x.c[k];
    return r;
}

TruncatedSeries ts_mul(const TruncatedSeries& x, const TruncatedSeries& y) {
    ts_require_same_m(x, y);
    TruncatedSeries r(x.m);
    for (int i = 0; i < x.m; ++i) {
        if (x.c[i] == 0) continue;
        for (int j = 0; i + j < x.m; ++j) {
            if (y.c[j] == 0) continue;
            r.c[i + j] += x.c[i] * y.c[j];
        }
    }
    return r;
}

TruncatedSeries ts_scale(const Rational& k, const TruncatedSeries& x) {
    TruncatedSeries r(x.m);
    for (int i = 0; i < x.m; ++i) r.c[i] = k * x.c[i];
    return r;
}

bool ts_is_zero(const TruncatedSeries& x) {
    for (const auto& v : x.c)
        if (v != 0) return false;
    return true;
}

bool ts_is_unit(const TruncatedSeries& x) { return x.c[0] != 0; }

TruncatedSeries ts_inv(const TruncatedSeries& x) {
    if (!ts_is_unit(x)) throw NonUnitError("ts_inv: constant term is zero");
    TruncatedSeries r(x.m);
    r.c[0] = Rational(1) / x.c[0];
    // Solve (x * r)_k = 0 for k >= 1 coefficient by coefficient.
    for (int k = 1; k < x.m; ++k) {
        Rational acc = 0;
        for (int j = 1; j <= k; ++j) acc += x.c[j] * r.c[k - j];
        r.c[k] = -acc / x.c[0];
    }
    return r;
}

TruncatedSeries ts_divided_power(const TruncatedSeries& x, int k) {
    if (k < 0) throw Error("ts_divided_power: negative exponent");
    TruncatedSeries acc = ts_const(x.m, 1);
    for (int j = 1; j <= k; ++j) acc = ts_scale(Rational(1, j), ts_mul(acc, x));
    return acc;
}

TruncatedSeries euler_derivation(const TruncatedSeries& x) {
    TruncatedSeries r(x.m);
    for (int k = 1; k < x.m; ++k) r.c[k] = Rational(k) * x.c[k];
    return r;
}

long long ts_vp(const TruncatedSeries& x, const ValuationConfig& cfg) {
    long long best = kValInfinity;
    for (const auto& v : x.c) {
        long long w = vp(v, cfg);
        if (w < best) best = w;
    }
    return best;
}

TruncatedSeries parse_series(int m, const std::string& s) {
    std::vector<Rational> coeffs;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) coeffs.push_back(parse_rational(item));
    if (coeffs.empty()) throw ParseError("empty series");
    if (static_cast<int>(coeffs.size()) > m)
        throw ParseError("series has more than m coefficients");
    return ts_make(m, std::move(coeffs));
}

std::string format_series(const TruncatedSeries& x) {
    std::string out;
    for (int k = 0; k < x.m; ++k) {
        if (k) out += ", ";
        out += format_rational(x.c[k]);
    }
    return out;
}

}  // namespace pdcrystal
