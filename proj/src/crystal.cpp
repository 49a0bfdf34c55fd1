#include "pdcrystal/crystal.hpp"

#include <algorithm>

namespace pdcrystal {

CrystalSpec make_crystal_spec(Flavor flavor, int r, int m, const Rational& a,
                              std::vector<SeriesMat> N, std::optional<SeriesMat> phi) {
    CrystalSpec spec;
    spec.flavor = std::move(flavor);
    if (flavor_is_absolute(spec.flavor.kind)) spec.flavor.a = a;
    spec.d = spec.flavor.d;
    spec.r = r;
    spec.m = m;
    spec.a = a;
    spec.N = std::move(N);
    spec.phi = std::move(phi);
    validate_spec_shape(spec);
    return spec;
}

void validate_spec_shape(const CrystalSpec& spec) {
    validate_flavor(spec.flavor);
    if (spec.r < 1) throw Error("crystal spec: rank must be >= 1");
    if (spec.m < 1) throw Error("crystal spec: truncation must be >= 1");
    if (spec.d != spec.flavor.d) throw Error("crystal spec: d differs from flavor d");
    if (static_cast<int>(spec.N.size()) != spec.d)
        throw Error("crystal spec: need one N matrix per geometric direction");
    auto check_mat = [&](const SeriesMat& n, const std::string& what) {
        if (n.rows != spec.r || n.cols != spec.r)
            throw Error("crystal spec: " + what + " must be " + std::to_string(spec.r) + "x" +
                        std::to_string(spec.r));
        for (const auto& e : n.a)
            if (e.m != spec.m) throw TruncationMismatch("crystal spec: " + what + " entry m");
    };
    for (size_t i = 0; i < spec.N.size(); ++i)
        check_mat(spec.N[i], "N_" + std::to_string(i + 1));
    if (flavor_is_absolute(spec.flavor.kind)) {
        if (!spec.phi) throw Error("crystal spec: absolute flavor requires phi");
        check_mat(*spec.phi, "phi");
        if (spec.flavor.a != spec.a) throw Error("crystal spec: a differs from flavor a");
    } else {
        if (spec.phi) throw Error("crystal spec: relative flavor admits no phi");
        if (spec.flavor.beta.m != spec.m)
            throw TruncationMismatch("crystal spec: twist series m differs from spec m");
    }
}

CheckResult check_integrability(const CrystalSpec& spec) {
    Timer timer;
    CheckResult res;
    res.name = "integrability";
    for (size_t i = 0; i < spec.N.size(); ++i)
        for (size_t j = i + 1; j < spec.N.size(); ++j) {
            SeriesMat comm =
                mat_sub(mat_mul(spec.N[i], spec.N[j]), mat_mul(spec.N[j], spec.N[i]));
            if (!mat_is_zero(comm)) {
                res.status = CheckStatus::Fail;
                res.witness = "[N_" + std::to_string(i + 1) + ", N_" + std::to_string(j + 1) +
                              "] != 0";
                res.ms = timer.ms();
                return res;
            }
        }
    res.ms = timer.ms();
    return res;
}

CheckResult check_nilpotence(const CrystalSpec& spec) {
    Timer timer;
    CheckResult res;
    res.name = "nilpotence";
    std::string indices;
    for (size_t i = 0; i < spec.N.size(); ++i) {
        // nilpotent over T_m iff nilpotent mod eps; the flattened operator is block
        // triangular, so the index is at most r*m.
        int cap = spec.r * spec.m;
        SeriesMat power = series_identity(spec.r, spec.m);
        int index = -1;
        for (int k = 1; k <= cap; ++k) {
            power = mat_mul(power, spec.N[i]);
            if (mat_is_zero(power)) {
                index = k;
                break;
            }
        }
        if (index < 0) {
            res.status = CheckStatus::Fail;
            res.witness = "N_" + std::to_string(i + 1) + "^" + std::to_string(cap) + " != 0";
            res.ms = timer.ms();
            return res;
        }
        if (!indices.empty()) indices += ", ";
        indices += "N_" + std::to_string(i + 1) + ": " + std::to_string(index);
    }
    res.witness = indices;
    res.ms = timer.ms();
    return res;
}

CheckResult check_enhanced_relation(const CrystalSpec& spec) {
    Timer timer;
    CheckResult res;
    res.name = "enhanced-relation";
    if (!spec.phi) throw Error("check_enhanced_relation: spec has no phi");
    const SeriesMat& phi = *spec.phi;
    for (size_t i = 0; i < spec.N.size(); ++i) {
        SeriesMat lhs = mat_add(mat_sub(mat_mul(phi, spec.N[i]), mat_mul(spec.N[i], phi)),
                                mat_euler(spec.N[i]));
        if (!(lhs == spec.N[i])) {
            res.status = CheckStatus::Fail;
            res.witness = "[phi + euler, N_" + std::to_string(i + 1) + "] != N_" +
                          std::to_string(i + 1);
            res.ms = timer.ms();
            return res;
        }
    }
    res.ms = timer.ms();
    return res;
}

static RatMat rat_poly(const RatMat& x, const std::vector<Rational>& f) {
    RatMat acc(x.rows, x.cols, Rational(0));
    RatMat power = rat_identity(x.rows);
    for (size_t k = 0; k < f.size(); ++k) {
        if (k) power = mat_mul(power, x);
        if (f[k] != 0) acc = mat_add(acc, mat_scale(f[k], power));
    }
    return acc;
}

bool polynomial_intertwining(const CrystalSpec& spec, const std::vector<Rational>& f) {
    if (!spec.phi) throw Error("polynomial_intertwining: spec has no phi");
    RatMat big_phi = flatten_connection_op(*spec.phi);
    RatMat shifted = mat_sub(big_phi, rat_identity(big_phi.rows));
    RatMat f_shifted = rat_poly(shifted, f);
    RatMat f_phi = rat_poly(big_phi, f);
    for (const auto& n : spec.N) {
        RatMat flat_n = flatten_series_mat(n);
        if (!(mat_mul(f_shifted, flat_n) == mat_mul(flat_n, f_phi))) return false;
    }
    return true;
}

const char* smallness_mode_name(SmallnessMode mode) {
    switch (mode) {
        case SmallnessMode::ExactVanishing: return "exact-vanishing";
        case SmallnessMode::ValuationGrowth: return "valuation-growth";
        case SmallnessMode::Refusal: return "inconclusive";
    }
    throw Error("smallness_mode_name: bad mode");
}

SmallnessCertificate certify_a_small(const SeriesMat& phi, const Rational& a,
                                     const ValuationConfig& cfg, int n_max, long long cutoff) {
    if (n_max < 1) throw Error("certify_a_small: n_max must be >= 1");
    SmallnessCertificate cert;
    RatMat big_phi = flatten_connection_op(phi);
    int dim = big_phi.rows;

    // A_{n+1} = a (PHI - n) A_n, A_0 = Id; scan for exact vanishing and valuations.
    std::vector<long long> vals;
    RatMat acc = rat_identity(dim);
    for (int n = 1; n <= n_max; ++n) {
        RatMat shifted = big_phi;
        for (int i = 0; i < dim; ++i) shifted.at(i, i) -= (n - 1);
        acc = mat_scale(a, mat_mul(shifted, acc));
        if (mat_is_zero(acc)) {
            cert.mode = SmallnessMode::ExactVanishing;
            cert.n_star = n;
            cert.details = "a^n prod_{i<n}(phi - i) = 0 at n = " + std::to_string(n);
            return cert;
        }
        long long v = kValInfinity;
        for (const auto& e : acc.a) v = std::min(v, vp(e, cfg));
        vals.push_back(v);
    }

    // last index attaining the minimum valuation; require non-decreasing beyond it and the
    // cutoff passed there.
    size_t last_min = 0;
    for (size_t n = 1; n < vals.size(); ++n)
        if (vals[n] <= vals[last_min]) last_min = n;
    bool monotone = true;
    for (size_t n = last_min; n + 1 < vals.size(); ++n)
        if (vals[n + 1] < vals[n]) monotone = false;
    int n_star = -1;
    for (size_t n = last_min; n < vals.size(); ++n)
        if (vals[n] > cutoff) {
            n_star = static_cast<int>(n) + 1;  // vals[k] is the valuation at n = k+1
            break;
        }
    if (monotone && n_star > 0) {
        cert.mode = SmallnessMode::ValuationGrowth;
        cert.n_star = n_star;
        cert.details = "min p-valuation " + format_valuation(vals[static_cast<size_t>(n_star - 1)]) +
                       " > cutoff " + std::to_string(cutoff) + " at n = " + std::to_string(n_star) +
                       ", floor " + format_valuation(vals[last_min]) + " at n = " +
                       std::to_string(last_min + 1) + ", non-decreasing through n_max = " +
                       std::to_string(n_max);
        return cert;
    }
    cert.mode = SmallnessMode::Refusal;
    cert.n_star = 0;
    cert.details = std::string("inconclusive within n_max = ") + std::to_string(n_max) +
                   (monotone ? ": cutoff " + std::to_string(cutoff) + " not reached"
                             : ": valuations not eventually monotone") +
                   "; final min valuation " + format_valuation(vals.back());
    return cert;
}

GradedElement apply_nabla(const CrystalSpec& spec, int i, const GradedElement& x) {
    if (i < 1 || i > spec.d) throw Error("apply_nabla: direction out of range");
    if (x.d != spec.d || x.r != spec.r || x.m != spec.m)
        throw Error("apply_nabla: element shape differs from spec");
    TruncatedSeries beta = flavor_beta(spec.flavor, spec.m);
    const SeriesMat& n_mat = spec.N[static_cast<size_t>(i - 1)];
    GradedElement out;
    out.d = x.d;
    out.r = x.r;
    out.m = x.m;
    for (const auto& [k, v] : x.components) {
        if (static_cast<int>(k.size()) != spec.d)
            throw Error("apply_nabla: multidegree arity mismatch");
        std::vector<TruncatedSeries> w(static_cast<size_t>(spec.r), TruncatedSeries(spec.m));
        TruncatedSeries twist = ts_scale(Rational(k[static_cast<size_t>(i - 1)]), beta);
        for (int row = 0; row < spec.r; ++row) {
            TruncatedSeries acc = ts_mul(twist, v[static_cast<size_t>(row)]);
            for (int col = 0; col < spec.r; ++col)
                acc = ts_add(acc, ts_mul(n_mat.at(row, col), v[static_cast<size_t>(col)]));
            w[static_cast<size_t>(row)] = acc;
        }
        bool all_zero = true;
        for (const auto& e : w)
            if (!ts_is_zero(e)) {
                all_zero = false;
                break;
            }
        if (!all_zero) out.components.emplace(k, std::move(w));
    }
    return out;
}

}  // namespace pdcrystal
