#include "pdcrystal/pd.hpp"

namespace pdcrystal {

PDRingPtr pd_ring(std::vector<std::string> vars, int bound, int m) {
    if (bound < 0) throw Error("pd_ring: bound must be >= 0");
    if (m < 1) throw Error("pd_ring: m must be >= 1");
    auto r = std::make_shared<PDRing>();
    r->vars = std::move(vars);
    r->bound = bound;
    r->m = m;
    return r;
}

BigInt binomial(int n, int k) {
    static std::vector<std::vector<BigInt>> pascal = {{BigInt(1)}};
    if (k < 0 || k > n) return 0;
    while (static_cast<int>(pascal.size()) <= n) {
        int row = static_cast<int>(pascal.size());
        std::vector<BigInt> next(row + 1, BigInt(1));
        for (int j = 1; j < row; ++j) next[j] = pascal[row - 1][j - 1] + pascal[row - 1][j];
        pascal.push_back(std::move(next));
    }
    return pascal[n][k];
}

int expo_total(const Expo& e) {
    int t = 0;
    for (int v : e) t += v;
    return t;
}

static void require_same_ring(const PDElement& x, const PDElement& y) {
    if (!(*x.ring == *y.ring))
        throw TruncationMismatch("pd: elements live in different rings");
}

PDElement pd_zero(const PDRingPtr& ring, int rows, int cols) {
    PDElement x;
    x.ring = ring;
    x.rows = rows;
    x.cols = cols;
    return x;
}

PDElement pd_const(const PDRingPtr& ring, const SeriesMat& c) {
    PDElement x = pd_zero(ring, c.rows, c.cols);
    pd_accumulate(x, Expo(ring->vars.size(), 0), c);
    return x;
}

PDElement pd_const(const PDRingPtr& ring, const TruncatedSeries& c) {
    SeriesMat mat(1, 1, c);
    return pd_const(ring, mat);
}

PDElement pd_const(const PDRingPtr& ring, const Rational& c) {
    return pd_const(ring, ts_const(ring->m, c));
}

PDElement pd_one(const PDRingPtr& ring) { return pd_const(ring, Rational(1)); }

PDElement pd_var(const PDRingPtr& ring, int v) {
    if (v < 0 || v >= static_cast<int>(ring->vars.size())) throw Error("pd_var: bad index");
    PDElement x = pd_zero(ring);
    if (ring->bound >= 1) {
        Expo e(ring->vars.size(), 0);
        e[v] = 1;
        SeriesMat one(1, 1, ts_const(ring->m, 1));
        x.terms.emplace(std::move(e), std::move(one));
    }
    return x;
}

void pd_accumulate(PDElement& x, const Expo& e, const SeriesMat& c) {
    if (static_cast<int>(e.size()) != static_cast<int>(x.ring->vars.size()))
        throw Error("pd_accumulate: exponent arity mismatch");
    if (c.rows != x.rows || c.cols != x.cols) throw Error("pd_accumulate: shape mismatch");
    if (expo_total(e) > x.ring->bound) return;
    if (!c.a.empty() && c.a[0].m != x.ring->m)
        throw TruncationMismatch("pd_accumulate: coefficient m differs from ring m");
    auto it = x.terms.find(e);
    if (it == x.terms.end()) {
        if (!mat_is_zero(c)) x.terms.emplace(e, c);
        return;
    }
    it->second = mat_add(it->second, c);
    if (mat_is_zero(it->second)) x.terms.erase(it);
}

PDElement pd_add(const PDElement& x, const PDElement& y) {
    require_same_ring(x, y);
    if (x.rows != y.rows || x.cols != y.cols) throw Error("pd_add: shape mismatch");
    PDElement r = x;
    for (const auto& [e, c] : y.terms) pd_accumulate(r, e, c);
    return r;
}

PDElement pd_neg(const PDElement& x) {
    PDElement r = x;
    for (auto& [e, c] : r.terms) c = mat_scale(Rational(-1), c);
    return r;
}

PDElement pd_sub(const PDElement& x, const PDElement& y) { return pd_add(x, pd_neg(y)); }

PDElement pd_scale(const Rational& k, const PDElement& x) {
    if (k == 0) return pd_zero(x.ring, x.rows, x.cols);
    PDElement r = x;
    for (auto& [e, c] : r.terms) c = mat_scale(k, c);
    return r;
}

PDElement pd_scale(const TruncatedSeries& k, const PDElement& x) {
    PDElement r = pd_zero(x.ring, x.rows, x.cols);
    for (const auto& [e, c] : x.terms) pd_accumulate(r, e, mat_scale(k, c));
    return r;
}

// Coefficient product with 1x1 broadcast; matrix order preserved.
static SeriesMat coeff_mul(const SeriesMat& a, const SeriesMat& b) {
    bool a_scalar = (a.rows == 1 && a.cols == 1);
    bool b_scalar = (b.rows == 1 && b.cols == 1);
    if (a_scalar && !b_scalar) return mat_scale(a.at(0, 0), b);
    if (b_scalar && !a_scalar) return mat_scale(b.at(0, 0), a);
    if (a_scalar && b_scalar) {
        SeriesMat r(1, 1, ts_mul(a.at(0, 0), b.at(0, 0)));
        return r;
    }
    return mat_mul(a, b);
}

PDElement pd_mul(const PDElement& x, const PDElement& y) {
    require_same_ring(x, y);
    bool x_scalar = (x.rows == 1 && x.cols == 1);
    bool y_scalar = (y.rows == 1 && y.cols == 1);
    int rr, rc;
    if (x_scalar) {
        rr = y.rows;
        rc = y.cols;
    } else if (y_scalar) {
        rr = x.rows;
        rc = x.cols;
    } else if (x.cols == y.rows) {
        rr = x.rows;
        rc = y.cols;
    } else {
        throw Error("pd_mul: coefficient shape mismatch");
    }
    PDElement r = pd_zero(x.ring, rr, rc);
    const int bound = x.ring->bound;
    const size_t nv = x.ring->vars.size();
    Expo e(nv, 0);
    for (const auto& [e1, c1] : x.terms) {
        int d1 = expo_total(e1);
        for (const auto& [e2, c2] : y.terms) {
            if (d1 + expo_total(e2) > bound) continue;
            Rational structure(1);
            for (size_t v = 0; v < nv; ++v) {
                e[v] = e1[v] + e2[v];
                if (e1[v] && e2[v]) structure *= Rational(binomial(e[v], e1[v]));
            }
            pd_accumulate(r, e, mat_scale(structure, coeff_mul(c1, c2)));
        }
    }
    return r;
}

bool pd_is_zero(const PDElement& x) { return x.terms.empty(); }

bool pd_has_constant_term(const PDElement& x) {
    Expo zero(x.ring->vars.size(), 0);
    return x.terms.count(zero) != 0;
}

SeriesMat pd_constant_term(const PDElement& x) {
    Expo zero(x.ring->vars.size(), 0);
    auto it = x.terms.find(zero);
    if (it != x.terms.end()) return it->second;
    return SeriesMat(x.rows, x.cols, TruncatedSeries(x.ring->m));
}

const SeriesMat* pd_coeff(const PDElement& x, const Expo& e) {
    auto it = x.terms.find(e);
    return it == x.terms.end() ? nullptr : &it->second;
}

PDElement pd_inv_one_plus(const PDElement& u) {
    if (u.rows != u.cols) throw Error("pd_inv_one_plus: coefficients must be square");
    if (pd_has_constant_term(u)) throw NonUnitError("pd_inv_one_plus: constant term present");
    PDElement acc = pd_zero(u.ring, u.rows, u.cols);
    SeriesMat one = (u.rows == 1) ? SeriesMat(1, 1, ts_const(u.ring->m, 1))
                                  : series_identity(u.rows, u.ring->m);
    PDElement power = pd_const(u.ring, one);
    acc = power;
    for (int k = 1; k <= u.ring->bound; ++k) {
        power = pd_mul(power, pd_neg(u));
        if (pd_is_zero(power)) break;
        acc = pd_add(acc, power);
    }
    return acc;
}

PDElement divided_power(const PDElement& u, int k) {
    if (!(u.rows == 1 && u.cols == 1)) throw Error("divided_power: scalar elements only");
    if (k < 0) throw Error("divided_power: negative exponent");
    if (k == 0) return pd_one(u.ring);
    if (pd_has_constant_term(u)) throw Error("divided_power: nonzero constant term");
    PDElement r = u;
    for (int j = 2; j <= k; ++j) {
        if (pd_is_zero(r)) break;
        r = pd_scale(Rational(1, j), pd_mul(r, u));
    }
    return r;
}

PDElement pd_pow(const PDElement& u, int k) {
    if (k < 0) throw Error("pd_pow: negative exponent");
    SeriesMat one = (u.rows == 1) ? SeriesMat(1, 1, ts_const(u.ring->m, 1))
                                  : series_identity(u.rows, u.ring->m);
    PDElement r = pd_const(u.ring, one);
    for (int j = 0; j < k; ++j) {
        if (pd_is_zero(r)) break;
        r = pd_mul(r, u);
    }
    return r;
}

std::string format_pd(const PDElement& x) {
    if (x.terms.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : x.terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (size_t v = 0; v < e.size(); ++v) {
            if (!e[v]) continue;
            if (!mono.empty()) mono += "*";
            mono += x.ring->vars[v];
            if (e[v] > 1) mono += "^[" + std::to_string(e[v]) + "]";
        }
        std::string coeff;
        if (c.rows == 1 && c.cols == 1) {
            coeff = "(" + format_series(c.at(0, 0)) + ")";
        } else {
            coeff = "[";
            for (int i = 0; i < c.rows; ++i) {
                if (i) coeff += " ; ";
                for (int j = 0; j < c.cols; ++j) {
                    if (j) coeff += ", ";
                    coeff += "(" + format_series(c.at(i, j)) + ")";
                }
            }
            coeff += "]";
        }
        out += mono.empty() ? coeff : coeff + "*" + mono;
    }
    return out;
}

std::string pd_first_difference(const PDElement& x, const PDElement& y) {
    PDElement diff = pd_sub(x, y);
    if (pd_is_zero(diff)) return {};
    const auto& [e, c] = *diff.terms.begin();
    std::string mono;
    for (size_t v = 0; v < e.size(); ++v) {
        if (!e[v]) continue;
        if (!mono.empty()) mono += "*";
        mono += diff.ring->vars[v] + "^[" + std::to_string(e[v]) + "]";
    }
    const TruncatedSeries* entry = nullptr;
    for (const auto& s : c.a)
        if (!ts_is_zero(s)) {
            entry = &s;
            break;
        }
    return "first differing monomial " + (mono.empty() ? std::string("1") : mono) +
           ", coefficient delta " + (entry ? format_series(*entry) : std::string("0"));
}

}  // namespace pdcrystal
