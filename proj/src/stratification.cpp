#include "pdcrystal/stratification.hpp"

#include <algorithm>
#include <functional>

namespace pdcrystal {

int StratKey::total() const {
    int t = i;
    for (int v : n) t += v;
    return t;
}

namespace {

std::string key_name(const StratKey& k) {
    std::string s = "(" + std::to_string(k.i);
    for (int v : k.n) s += "," + std::to_string(v);
    return s + ")";
}

// All coefficient keys with total degree <= degree, by increasing total degree.
std::vector<StratKey> all_keys(bool absolute, int d, int degree) {
    std::vector<StratKey> out;
    std::vector<int> n(static_cast<size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == d) {
            int used = degree - rem;
            int imax = absolute ? degree - used : 0;
            for (int i = 0; i <= imax; ++i) out.push_back(StratKey{i, n});
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            n[static_cast<size_t>(pos)] = v;
            rec(pos + 1, rem - v);
        }
        n[static_cast<size_t>(pos)] = 0;
    };
    rec(0, degree);
    std::stable_sort(out.begin(), out.end(), [](const StratKey& x, const StratKey& y) {
        return x.total() < y.total();
    });
    return out;
}

void require_precondition(const CheckResult& c) {
    if (c.status != CheckStatus::Pass)
        throw Error("build_stratification: precondition " + c.name + " failed: " + c.witness);
}

}  // namespace

StratificationTable build_stratification(const CrystalSpec& spec, int degree, StratOrder order) {
    if (degree < 0) throw Error("build_stratification: degree must be >= 0");
    validate_spec_shape(spec);
    require_precondition(check_integrability(spec));
    require_precondition(check_nilpotence(spec));
    if (spec.phi) require_precondition(check_enhanced_relation(spec));

    StratificationTable t;
    t.flavor = spec.flavor;
    t.d = spec.d;
    t.r = spec.r;
    t.m = spec.m;
    t.a = spec.a;
    t.degree = degree;

    const bool absolute = flavor_is_absolute(spec.flavor.kind);
    const SeriesMat id = series_identity(spec.r, spec.m);
    TruncatedSeries beta(spec.m);
    if (spec.d > 0) beta = flavor_beta(spec.flavor, spec.m);

    // G_{i, n+1_s} = (N_s + n_s beta Id) G_{i,n}, matrices over T_m.
    auto geometric_step = [&](const SeriesMat& g, int s, int ns) {
        SeriesMat f = spec.N[static_cast<size_t>(s)];
        if (ns) f = mat_add(f, mat_scale(ts_scale(Rational(ns), beta), id));
        return mat_mul(f, g);
    };
    // G_{i+1, n} = a (phi G + euler(G)) - a * shift * G, the operator a(PHI - shift) on
    // coordinate columns with PHI = phi + euler.
    auto arithmetic_step = [&](const SeriesMat& g, int shift) {
        SeriesMat v = mat_add(mat_mul(*spec.phi, g), mat_euler(g));
        if (shift) v = mat_sub(v, mat_scale(Rational(shift), g));
        return mat_scale(spec.a, v);
    };

    for (const StratKey& key : all_keys(absolute, spec.d, degree)) {
        if (key.total() == 0) {
            t.coeffs.emplace(key, id);
            continue;
        }
        int first_s = -1;
        for (int s = 0; s < spec.d; ++s)
            if (key.n[static_cast<size_t>(s)] > 0) {
                first_s = s;
                break;
            }
        bool use_geometric = (order == StratOrder::GeometricFirst) ? (key.i == 0 && first_s >= 0)
                                                                   : (first_s >= 0);
        if (use_geometric) {
            StratKey prev = key;
            --prev.n[static_cast<size_t>(first_s)];
            t.coeffs.emplace(
                key, geometric_step(t.coeffs.at(prev), first_s, prev.n[static_cast<size_t>(first_s)]));
        } else {
            StratKey prev = key;
            --prev.i;
            t.coeffs.emplace(key, arithmetic_step(t.coeffs.at(prev), prev.total()));
        }
    }
    return t;
}

CheckResult verify_cocycle(const StratificationTable& t, int degree) {
    Timer timer;
    if (degree < 0) degree = t.degree;
    CheckResult res;
    res.name = "cocycle(degree=" + std::to_string(degree) + ")";

    const Flavor& fl = t.flavor;
    validate_flavor(fl);
    if (fl.d != t.d) throw Error("verify_cocycle: flavor/table d mismatch");

    NerveLayout lay{fl.kind, fl.d, 1};
    PDRingPtr ring1 = nerve_ring(fl, 1, degree, t.m);
    PDElement e_mat = pd_zero(ring1, t.r, t.r);
    for (const auto& [key, g] : t.coeffs) {
        if (key.total() > degree || mat_is_zero(g)) continue;
        if (g.rows != t.r || g.cols != t.r || g.a[0].m != t.m)
            throw Error("verify_cocycle: coefficient shape mismatch at " + key_name(key));
        Expo e(static_cast<size_t>(lay.var_count()), 0);
        if (lay.has_x()) e[static_cast<size_t>(lay.x_index(1))] = key.i;
        for (int s = 1; s <= t.d; ++s)
            e[static_cast<size_t>(lay.y_index(s, 1))] = key.n[static_cast<size_t>(s - 1)];
        pd_accumulate(e_mat, e, g);
    }

    RingHom p0 = face(fl, 1, 0, degree, t.m);
    RingHom p1 = face(fl, 1, 1, degree, t.m);
    RingHom p2 = face(fl, 1, 2, degree, t.m);
    PDElement lhs = pd_mul(hom_apply(p2, e_mat), hom_apply(p0, e_mat));
    PDElement rhs = hom_apply(p1, e_mat);
    if (!(lhs == rhs)) {
        res.status = CheckStatus::Fail;
        res.witness = "p2(E) p0(E) != p1(E): " + pd_first_difference(lhs, rhs);
        res.ms = timer.ms();
        return res;
    }

    RingHom s0 = degeneracy(fl, 1, 0, degree, t.m);
    PDElement down = hom_apply(s0, e_mat);
    PDElement idc = pd_const(s0.target, series_identity(t.r, t.m));
    if (!(down == idc)) {
        res.status = CheckStatus::Fail;
        res.witness = "sigma0(E) != Id: " + pd_first_difference(down, idc);
    }
    res.ms = timer.ms();
    return res;
}

CrystalSpec extract_connection(const StratificationTable& t) {
    if (t.degree < 1) throw Error("extract_connection: table degree must be >= 1");
    const bool absolute = flavor_is_absolute(t.flavor.kind);
    std::vector<SeriesMat> N;
    N.reserve(static_cast<size_t>(t.d));
    for (int s = 0; s < t.d; ++s) {
        StratKey key{0, std::vector<int>(static_cast<size_t>(t.d), 0)};
        key.n[static_cast<size_t>(s)] = 1;
        auto it = t.coeffs.find(key);
        if (it == t.coeffs.end())
            throw Error("extract_connection: missing coefficient " + key_name(key));
        N.push_back(it->second);
    }
    std::optional<SeriesMat> phi;
    if (absolute) {
        if (t.a == 0) throw Error("extract_connection: arithmetic twist a must be nonzero");
        StratKey key{1, std::vector<int>(static_cast<size_t>(t.d), 0)};
        auto it = t.coeffs.find(key);
        if (it == t.coeffs.end())
            throw Error("extract_connection: missing coefficient " + key_name(key));
        phi = mat_scale(Rational(1) / t.a, it->second);
    }
    return make_crystal_spec(t.flavor, t.r, t.m, t.a, std::move(N), std::move(phi));
}

CheckResult check_iteration(const StratificationTable& t) {
    Timer timer;
    CheckResult res;
    res.name = "iteration-converse(degree=" + std::to_string(t.degree) + ")";
    auto fail = [&](const std::string& wit) {
        res.status = CheckStatus::Fail;
        res.witness = wit;
        res.ms = timer.ms();
        return res;
    };

    StratKey origin{0, std::vector<int>(static_cast<size_t>(t.d), 0)};
    auto it0 = t.coeffs.find(origin);
    if (it0 == t.coeffs.end()) return fail("missing coefficient " + key_name(origin));
    if (!(it0->second == series_identity(t.r, t.m)))
        return fail("G_(0,0) != Id");
    if (t.degree < 1) {
        res.ms = timer.ms();
        return res;
    }

    CrystalSpec conn = extract_connection(t);
    TruncatedSeries beta(t.m);
    if (t.d > 0) beta = flavor_beta(t.flavor, t.m);
    const SeriesMat id = series_identity(t.r, t.m);

    for (const auto& [key, g] : t.coeffs) {
        // geometric successors
        for (int s = 0; s < t.d; ++s) {
            StratKey up = key;
            ++up.n[static_cast<size_t>(s)];
            auto it = t.coeffs.find(up);
            if (it == t.coeffs.end()) {
                if (up.total() <= t.degree)
                    return fail("missing coefficient " + key_name(up));
                continue;
            }
            SeriesMat f = conn.N[static_cast<size_t>(s)];
            int ns = key.n[static_cast<size_t>(s)];
            if (ns) f = mat_add(f, mat_scale(ts_scale(Rational(ns), beta), id));
            if (!(it->second == mat_mul(f, g)))
                return fail("geometric step fails at " + key_name(up));
        }
        // arithmetic successor
        if (conn.phi) {
            StratKey up = key;
            ++up.i;
            auto it = t.coeffs.find(up);
            if (it == t.coeffs.end()) {
                if (up.total() <= t.degree)
                    return fail("missing coefficient " + key_name(up));
                continue;
            }
            SeriesMat v = mat_add(mat_mul(*conn.phi, g), mat_euler(g));
            v = mat_sub(v, mat_scale(Rational(key.total()), g));
            if (!(it->second == mat_scale(t.a, v)))
                return fail("arithmetic step fails at " + key_name(up));
        }
    }
    res.ms = timer.ms();
    return res;
}

SeriesMat evaluate(const StratificationTable& t,
                   const std::map<std::string, TruncatedSeries>& assignment) {
    NerveLayout lay{t.flavor.kind, t.d, 1};
    PDRingPtr ring1 = nerve_ring(t.flavor, 1, t.degree, t.m);
    std::vector<TruncatedSeries> values(static_cast<size_t>(lay.var_count()),
                                        TruncatedSeries(t.m));
    for (const auto& [name, v] : assignment) {
        auto it = std::find(ring1->vars.begin(), ring1->vars.end(), name);
        if (it == ring1->vars.end())
            throw Error("evaluate: unknown variable " + name);
        if (v.m != t.m) throw TruncationMismatch("evaluate: assigned value has wrong m");
        values[static_cast<size_t>(it - ring1->vars.begin())] = v;
    }

    SeriesMat acc(t.r, t.r, TruncatedSeries(t.m));
    for (const auto& [key, g] : t.coeffs) {
        if (mat_is_zero(g)) continue;
        TruncatedSeries w = ts_const(t.m, 1);
        if (lay.has_x())
            w = ts_mul(w, ts_divided_power(values[static_cast<size_t>(lay.x_index(1))], key.i));
        for (int s = 1; s <= t.d; ++s)
            w = ts_mul(w, ts_divided_power(values[static_cast<size_t>(lay.y_index(s, 1))],
                                           key.n[static_cast<size_t>(s - 1)]));
        if (ts_is_zero(w)) continue;
        acc = mat_add(acc, mat_scale(w, g));
    }
    return acc;
}

}  // namespace pdcrystal
