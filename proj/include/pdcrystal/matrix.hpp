#pragma once

#include <vector>

#include "pdcrystal/series.hpp"

namespace pdcrystal {

inline Rational ring_zero(const Rational&) { return Rational(0); }
inline TruncatedSeries ring_zero(const TruncatedSeries& x) { return TruncatedSeries(x.m); }
inline Rational ring_add(const Rational& a, const Rational& b) { return a + b; }
inline TruncatedSeries ring_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    return ts_add(a, b);
}
inline Rational ring_mul(const Rational& a, const Rational& b) { return a * b; }
inline TruncatedSeries ring_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    return ts_mul(a, b);
}
inline bool ring_is_zero(const Rational& a) { return a == 0; }
inline bool ring_is_zero(const TruncatedSeries& a) { return ts_is_zero(a); }

template <class R>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<R> a;

    Mat() = default;
    Mat(int r, int c, const R& zero) : rows(r), cols(c), a(static_cast<size_t>(r) * c, zero) {}

    R& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const R& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using SeriesMat = Mat<TruncatedSeries>;
using RatMat = Mat<Rational>;

template <class R>
Mat<R> mat_add(const Mat<R>& x, const Mat<R>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("mat_add: shape mismatch");
    Mat<R> r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = ring_add(r.a[i], y.a[i]);
    return r;
}

inline SeriesMat mat_sub(const SeriesMat& x, const SeriesMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("mat_sub: shape mismatch");
    SeriesMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = ts_sub(r.a[i], y.a[i]);
    return r;
}

inline RatMat mat_sub(const RatMat& x, const RatMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("mat_sub: shape mismatch");
    RatMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

template <class R>
Mat<R> mat_mul(const Mat<R>& x, const Mat<R>& y) {
    if (x.cols != y.rows) throw Error("mat_mul: shape mismatch");
    if (x.a.empty() || y.a.empty()) throw Error("mat_mul: empty matrix");
    Mat<R> r(x.rows, y.cols, ring_zero(x.a[0]));
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const R& xv = x.at(i, k);
            if (ring_is_zero(xv)) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (ring_is_zero(y.at(k, j))) continue;
                r.at(i, j) = ring_add(r.at(i, j), ring_mul(xv, y.at(k, j)));
            }
        }
    return r;
}

inline SeriesMat mat_scale(const TruncatedSeries& k, const SeriesMat& x) {
    SeriesMat r = x;
    for (auto& v : r.a) v = ts_mul(k, v);
    return r;
}

inline SeriesMat mat_scale(const Rational& k, const SeriesMat& x) {
    SeriesMat r = x;
    for (auto& v : r.a) v = ts_scale(k, v);
    return r;
}

inline RatMat mat_scale(const Rational& k, const RatMat& x) {
    RatMat r = x;
    for (auto& v : r.a) v *= k;
    return r;
}

template <class R>
bool mat_is_zero(const Mat<R>& x) {
    for (const auto& v : x.a)
        if (!ring_is_zero(v)) return false;
    return true;
}

inline SeriesMat series_identity(int n, int m) {
    SeriesMat r(n, n, TruncatedSeries(m));
    for (int i = 0; i < n; ++i) r.at(i, i) = ts_const(m, 1);
    return r;
}

inline RatMat rat_identity(int n) {
    RatMat r(n, n, Rational(0));
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

// Entrywise euler derivation (the coordinate-matrix image of composing with eps d/deps).
inline SeriesMat mat_euler(const SeriesMat& x) {
    SeriesMat r = x;
    for (auto& v : r.a) v = euler_derivation(v);
    return r;
}

// --- Flattening T_m^r to a K-vector space of dimension r*m -------------------------------
//
// Basis ordering: index k*r + j stands for e_j * eps^k (eps-degree-major blocks), so
// T_m-linear maps flatten to block-lower-triangular matrices in the eps-degree filtration.

// Flatten a T_m-linear map given by an r x r matrix over T_m.
RatMat flatten_series_mat(const SeriesMat& n);

// Flatten multiplication by a scalar series on T_m^r.
RatMat flatten_scalar_mult(const TruncatedSeries& c, int r);

// Flatten the operator (matrix + euler-on-coordinates), the E-connection attached to a matrix.
RatMat flatten_connection_op(const SeriesMat& phi);

// Read an operator on the flattened space back as an r x r T_m coordinate matrix
// (columns = coordinates of the images of the basis vectors e_j = e_j * eps^0).
SeriesMat unflatten_on_basis(const RatMat& f, int r, int m);

// Flatten a vector in T_m^r.
std::vector<Rational> flatten_vector(const std::vector<TruncatedSeries>& v);

// Exact rank over Q by Gaussian elimination.
int rat_rank(RatMat m);

// Solve m * x = b exactly; returns false when inconsistent.
bool rat_solve(RatMat m, std::vector<Rational> b, std::vector<Rational>& x);

}  // namespace pdcrystal
