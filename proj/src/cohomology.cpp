#include "pdcrystal/cohomology.hpp"

#include <functional>

namespace pdcrystal {

namespace {

// Subsets of {0..d-1} of size q, each sorted ascending, in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int d, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == q) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < d; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

int subset_index(const std::vector<std::vector<int>>& list, const std::vector<int>& s) {
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == s) return static_cast<int>(i);
    throw Error("cohomology: subset not found");
}

void place_block(RatMat& big, int row0, int col0, const RatMat& block, const Rational& scale) {
    for (int i = 0; i < block.rows; ++i)
        for (int j = 0; j < block.cols; ++j) {
            const Rational& v = block.at(i, j);
            if (v != 0) big.at(row0 + i, col0 + j) += scale * v;
        }
}

// Koszul differential C^q -> C^{q+1}: v (x) e_S -> sum_{i not in S} sign(i,S) A_i v (x) e_{S+i}.
RatMat koszul_matrix(const std::vector<RatMat>& A, int d, int q, int v) {
    auto src = subsets_of_size(d, q);
    auto dst = subsets_of_size(d, q + 1);
    RatMat out(v * static_cast<int>(dst.size()), v * static_cast<int>(src.size()), Rational(0));
    for (size_t js = 0; js < src.size(); ++js) {
        for (int i = 0; i < d; ++i) {
            int below = 0;
            bool member = false;
            for (int e : src[js]) {
                if (e == i) member = true;
                if (e < i) ++below;
            }
            if (member) continue;
            std::vector<int> t = src[js];
            t.insert(t.begin() + below, i);
            int jt = subset_index(dst, t);
            Rational sign((below % 2) ? -1 : 1);
            place_block(out, jt * v, static_cast<int>(js) * v, A[static_cast<size_t>(i)], sign);
        }
    }
    return out;
}

std::vector<RatMat> operators_at(const CrystalSpec& spec, const std::vector<int>& k) {
    std::vector<RatMat> A;
    A.reserve(static_cast<size_t>(spec.d));
    RatMat beta_mult(0, 0, Rational(0));
    if (spec.d > 0)
        beta_mult = flatten_scalar_mult(flavor_beta(spec.flavor, spec.m), spec.r);
    for (int i = 0; i < spec.d; ++i) {
        RatMat a = flatten_series_mat(spec.N[static_cast<size_t>(i)]);
        if (k[static_cast<size_t>(i)] != 0)
            a = mat_add(a, mat_scale(Rational(k[static_cast<size_t>(i)]), beta_mult));
        A.push_back(std::move(a));
    }
    return A;
}

long long binom_ll(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

bool on_boundary(const DegreeWindow& w, const std::vector<int>& k) {
    for (size_t s = 0; s < k.size(); ++s)
        if (k[s] == w.lo[s] || k[s] == w.hi[s]) return true;
    return false;
}

void for_each_degree(const DegreeWindow& w, int d,
                     const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> k(static_cast<size_t>(d), 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == d) {
            f(k);
            return;
        }
        for (int v = w.lo[static_cast<size_t>(pos)]; v <= w.hi[static_cast<size_t>(pos)]; ++v) {
            k[static_cast<size_t>(pos)] = v;
            rec(pos + 1);
        }
    };
    rec(0);
}

void validate_window(const DegreeWindow& w, int d) {
    if (static_cast<int>(w.lo.size()) != d || static_cast<int>(w.hi.size()) != d)
        throw Error("cohomology: window must have one bound pair per direction");
    for (int s = 0; s < d; ++s)
        if (w.lo[static_cast<size_t>(s)] > w.hi[static_cast<size_t>(s)])
            throw Error("cohomology: empty window");
}

void require_valid(const CrystalSpec& spec) {
    validate_spec_shape(spec);
    for (const CheckResult& c : {check_integrability(spec), check_nilpotence(spec)})
        if (c.status != CheckStatus::Pass)
            throw Error("cohomology: precondition " + c.name + " failed: " + c.witness);
    if (spec.phi) {
        CheckResult c = check_enhanced_relation(spec);
        if (c.status != CheckStatus::Pass)
            throw Error("cohomology: precondition " + c.name + " failed: " + c.witness);
    }
}

CohomologyReport run(const CrystalSpec& spec, const DegreeWindow& window, bool enhanced) {
    require_valid(spec);
    validate_window(window, spec.d);
    if (enhanced && !spec.phi)
        throw Error("cohomology: enhanced totalization requires an arithmetic operator");

    const int v = spec.r * spec.m;
    const int d = spec.d;
    CohomologyReport rep;
    rep.enhanced = enhanced;
    rep.d = d;
    rep.r = spec.r;
    rep.m = spec.m;
    rep.window = window;

    RatMat phi_flat(0, 0, Rational(0));
    if (enhanced) phi_flat = flatten_connection_op(*spec.phi);

    // chi is forced by the dimensions alone: 0 whenever the complex has two or more terms
    // of equal alternating weight, r*m for the one-term point complex.
    long long expect_euler = enhanced ? 0 : (d == 0 ? v : 0);

    for_each_degree(window, d, [&](const std::vector<int>& k) {
        std::vector<RatMat> A = operators_at(spec, k);

        int top = enhanced ? d + 1 : d;
        std::vector<long long> dims(static_cast<size_t>(top) + 1);
        std::vector<int> ranks(static_cast<size_t>(top) + 1, 0);  // rank of D_n (D_top = 0)

        auto cdim = [&](int q) { return v * binom_ll(d, q); };
        for (int n = 0; n <= top; ++n)
            dims[static_cast<size_t>(n)] = enhanced ? cdim(n) + cdim(n - 1) : cdim(n);

        for (int n = 0; n < top; ++n) {
            RatMat D(0, 0, Rational(0));
            if (!enhanced) {
                D = koszul_matrix(A, d, n, v);
            } else {
                // rows: C^{n+1} + C^n, cols: C^n + C^{n-1}
                D = RatMat(static_cast<int>(cdim(n + 1) + cdim(n)),
                           static_cast<int>(cdim(n) + cdim(n - 1)), Rational(0));
                if (n < d) {
                    RatMat dh = koszul_matrix(A, d, n, v);
                    place_block(D, 0, 0, dh, Rational(1));
                }
                // vertical (PHI - n) on each Koszul summand of C^n
                long long copies = binom_ll(d, n);
                for (long long c = 0; c < copies; ++c) {
                    RatMat vert = phi_flat;
                    for (int i = 0; i < vert.rows; ++i) vert.at(i, i) -= n;
                    place_block(D, static_cast<int>(cdim(n + 1) + c * v),
                                static_cast<int>(c * v), vert, Rational(1));
                }
                if (n >= 1) {
                    RatMat dh = koszul_matrix(A, d, n - 1, v);
                    place_block(D, static_cast<int>(cdim(n + 1)), static_cast<int>(cdim(n)), dh,
                                Rational(-1));
                }
            }
            ranks[static_cast<size_t>(n)] = rat_rank(std::move(D));
        }

        DegreeCohomology dc;
        dc.k = k;
        for (int n = 0; n <= top; ++n) {
            int below = (n == 0) ? 0 : ranks[static_cast<size_t>(n - 1)];
            int h = static_cast<int>(dims[static_cast<size_t>(n)]) -
                    ranks[static_cast<size_t>(n)] - below;
            dc.betti.push_back(h);
            dc.euler += (n % 2) ? -h : h;
        }
        if (dc.euler != expect_euler) rep.euler_balanced = false;
        bool nonzero = false;
        for (int h : dc.betti) nonzero = nonzero || (h != 0);
        if (nonzero && d > 0 && on_boundary(window, k)) rep.nonzero_boundary.push_back(k);
        rep.degrees.push_back(std::move(dc));
    });
    return rep;
}

}  // namespace

DegreeWindow window_box(int d, int radius) {
    if (radius < 0) throw Error("window_box: radius must be >= 0");
    DegreeWindow w;
    w.lo.assign(static_cast<size_t>(d), -radius);
    w.hi.assign(static_cast<size_t>(d), radius);
    return w;
}

CohomologyReport dr_cohomology(const CrystalSpec& spec, const DegreeWindow& window) {
    return run(spec, window, false);
}

CohomologyReport enhanced_cohomology(const CrystalSpec& spec, const DegreeWindow& window) {
    return run(spec, window, true);
}

}  // namespace pdcrystal
