#include "pdcrystal/matrix.hpp"

namespace pdcrystal {

RatMat flatten_series_mat(const SeriesMat& n) {
    if (n.rows != n.cols || n.a.empty()) throw Error("flatten_series_mat: need square matrix");
    int r = n.rows, m = n.a[0].m;
    RatMat f(r * m, r * m, Rational(0));
    for (int k1 = 0; k1 < m; ++k1)
        for (int k2 = k1; k2 < m; ++k2)
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    f.at(k2 * r + i, k1 * r + j) = n.at(i, j).c[k2 - k1];
    return f;
}

RatMat flatten_scalar_mult(const TruncatedSeries& c, int r) {
    int m = c.m;
    RatMat f(r * m, r * m, Rational(0));
    for (int k1 = 0; k1 < m; ++k1)
        for (int k2 = k1; k2 < m; ++k2)
            for (int i = 0; i < r; ++i) f.at(k2 * r + i, k1 * r + i) = c.c[k2 - k1];
    return f;
}

RatMat flatten_connection_op(const SeriesMat& phi) {
    RatMat f = flatten_series_mat(phi);
    int r = phi.rows, m = phi.a[0].m;
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < r; ++i) f.at(k * r + i, k * r + i) += k;
    return f;
}

SeriesMat unflatten_on_basis(const RatMat& f, int r, int m) {
    if (f.rows != r * m || f.cols != r * m) throw Error("unflatten_on_basis: shape mismatch");
    SeriesMat n(r, r, TruncatedSeries(m));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) n.at(i, j).c[k] = f.at(k * r + i, j);
    return n;
}

std::vector<Rational> flatten_vector(const std::vector<TruncatedSeries>& v) {
    if (v.empty()) return {};
    int r = static_cast<int>(v.size()), m = v[0].m;
    std::vector<Rational> out(static_cast<size_t>(r) * m);
    for (int j = 0; j < r; ++j) {
        if (v[j].m != m) throw TruncationMismatch("flatten_vector: mixed m");
        for (int k = 0; k < m; ++k) out[static_cast<size_t>(k) * r + j] = v[j].c[k];
    }
    return out;
}

int rat_rank(RatMat m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        Rational inv = Rational(1) / m.at(rank, col);
        for (int j = col; j < m.cols; ++j) m.at(rank, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank || m.at(i, col) == 0) continue;
            Rational factor = m.at(i, col);
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= factor * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

bool rat_solve(RatMat m, std::vector<Rational> b, std::vector<Rational>& x) {
    if (static_cast<int>(b.size()) != m.rows) throw Error("rat_solve: shape mismatch");
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
            std::swap(b[piv], b[rank]);
        }
        Rational inv = Rational(1) / m.at(rank, col);
        for (int j = col; j < m.cols; ++j) m.at(rank, j) *= inv;
        b[rank] *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank || m.at(i, col) == 0) continue;
            Rational factor = m.at(i, col);
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= factor * m.at(rank, j);
            b[i] -= factor * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (int i = rank; i < m.rows; ++i)
        if (b[i] != 0) return false;
    x.assign(m.cols, Rational(0));
    for (int i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
    return true;
}

}  // namespace pdcrystal
