#include "pdcrystal/commands.hpp"

#include <random>
#include <sstream>

#include "pdcrystal/cosimplicial.hpp"
#include "pdcrystal/expansion.hpp"
#include "pdcrystal/realization.hpp"
#include "pdcrystal/sen.hpp"
#include "pdcrystal/stratification.hpp"

namespace pdcrystal {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

void note_mat(std::vector<std::string>& notes, const std::string& label, const SeriesMat& mat) {
    int m = static_cast<int>(mat.at(0, 0).c.size());
    bool any = false;
    for (int k = 0; k < m; ++k) {
        bool nz = false;
        for (const auto& v : mat.a)
            if (v.c[static_cast<size_t>(k)] != 0) {
                nz = true;
                break;
            }
        if (!nz) continue;
        notes.push_back(label + "[" + std::to_string(k) +
                        "] = " + format_series_mat_slice(mat, k));
        any = true;
    }
    if (!any) notes.push_back(label + " = 0");
}

std::string strat_label(const StratKey& key) {
    std::string s = "G[" + std::to_string(key.i);
    if (!key.n.empty()) s += "; " + join_ints(key.n);
    return s + "]";
}

std::string degree_note(const DegreeCohomology& dc, bool enhanced) {
    std::string s = enhanced ? "enhanced k=(" : "k=(";
    s += join_ints(dc.k) + "): h =";
    for (int b : dc.betti) s += " " + std::to_string(b);
    return s + " (euler " + std::to_string(dc.euler) + ")";
}

void cohomology_notes(std::vector<std::string>& notes, const CohomologyReport& rep) {
    for (const DegreeCohomology& dc : rep.degrees) notes.push_back(degree_note(dc, rep.enhanced));
    if (!rep.nonzero_boundary.empty()) {
        std::string s = rep.enhanced ? "enhanced " : "";
        s += "window-boundary multidegrees with nonzero cohomology (enlarge the window to "
             "confirm):";
        for (const auto& k : rep.nonzero_boundary) s += " (" + join_ints(k) + ")";
        notes.push_back(s);
    }
}

CheckResult euler_result(const CohomologyReport& rep) {
    CheckResult c;
    c.name = rep.enhanced ? "enhanced-euler-balance" : "euler-balance";
    c.status = rep.euler_balanced ? CheckStatus::Pass : CheckStatus::Fail;
    if (!rep.euler_balanced)
        for (const DegreeCohomology& dc : rep.degrees) c.witness = degree_note(dc, rep.enhanced);
    return c;
}

SenElement parse_sen_rhs(const std::string& text, int n_max, int m) {
    std::vector<TruncatedSeries> coeffs;
    std::string part;
    std::stringstream ss(text);
    while (std::getline(ss, part, ';')) coeffs.push_back(parse_series(m, trim(part)));
    if (static_cast<int>(coeffs.size()) > n_max + 1)
        throw ParseError("b has more than n_max + 1 coefficients");
    coeffs.resize(static_cast<size_t>(n_max) + 1, TruncatedSeries(m));
    return sen_make(n_max, m, std::move(coeffs));
}

}  // namespace

ReportFile cmd_check(const SpecFile& sf) {
    ReportFile rep;
    rep.command = "check";
    CrystalSpec spec = to_crystal_spec(sf);
    rep.results.push_back(check_integrability(spec));
    rep.results.push_back(check_nilpotence(spec));
    if (spec.phi) {
        rep.results.push_back(check_enhanced_relation(spec));
        Timer timer;
        SmallnessCertificate cert =
            certify_a_small(*spec.phi, spec.a, ValuationConfig{sf.prime}, sf.n_max, sf.cutoff);
        CheckResult c;
        c.name = "a-smallness";
        if (cert.mode == SmallnessMode::Refusal) {
            c.status = CheckStatus::Inconclusive;
            c.witness = cert.details;
        } else {
            rep.notes.push_back(std::string("a-smallness: ") + smallness_mode_name(cert.mode) +
                                " at n = " + std::to_string(cert.n_star) +
                                (cert.details.empty() ? "" : " (" + cert.details + ")"));
        }
        c.ms = timer.ms();
        rep.results.push_back(c);
    } else {
        rep.notes.push_back(
            "no arithmetic operator: enhanced relation and a-smallness not applicable");
    }
    rep.exit_code = combine_exit_code(rep.results);
    return rep;
}

ReportFile cmd_identities(int degree) {
    ReportFile rep;
    rep.command = "identities";
    rep.results.push_back(verify_formal_identities(degree));
    TruncatedSeries beta(3);
    beta.c[1] = 1;
    beta.c[2] = -2;
    Rational a(5, 3);
    std::vector<Flavor> reps = {relative_smooth(2, beta), relative_log(2, 3),
                                absolute_smooth(2, a), absolute_log(2, a), arithmetic_point(a)};
    for (const Flavor& f : reps) rep.results.push_back(check_simplicial_identities(f, degree));
    rep.exit_code = combine_exit_code(rep.results);
    return rep;
}

ReportFile cmd_stratify(const SpecFile& sf, bool verify) {
    ReportFile rep;
    rep.command = "stratify";
    CrystalSpec spec = to_crystal_spec(sf);
    Timer timer;
    StratificationTable table = build_stratification(spec, sf.pd_degree);
    CheckResult built;
    built.name = "build(degree=" + std::to_string(sf.pd_degree) + ")";
    built.ms = timer.ms();
    rep.results.push_back(built);
    rep.notes.push_back("table entries: " + std::to_string(table.coeffs.size()) +
                        " (total degree <= " + std::to_string(table.degree) + ")");
    for (const auto& [key, mat] : table.coeffs) note_mat(rep.notes, strat_label(key), mat);
    if (verify) {
        rep.results.push_back(verify_cocycle(table));
        rep.results.push_back(check_iteration(table));
    }
    rep.exit_code = combine_exit_code(rep.results);
    return rep;
}

ReportFile cmd_verify_cocycle(const SpecFile& sf) {
    ReportFile rep;
    rep.command = "verify-cocycle";
    CrystalSpec spec = to_crystal_spec(sf);
    Timer timer;
    StratificationTable table = build_stratification(spec, sf.pd_degree);
    CheckResult built;
    built.name = "build(degree=" + std::to_string(sf.pd_degree) + ")";
    built.ms = timer.ms();
    rep.results.push_back(built);
    rep.results.push_back(verify_cocycle(table));
    rep.results.push_back(check_iteration(table));
    rep.exit_code = combine_exit_code(rep.results);
    return rep;
}

ReportFile cmd_cohomology(const SpecFile& sf) {
    ReportFile rep;
    rep.command = "cohomology";
    CrystalSpec spec = to_crystal_spec(sf);
    DegreeWindow window = effective_window(sf);
    rep.notes.push_back("window = " + format_window(window));
    CohomologyReport dr = dr_cohomology(spec, window);
    rep.results.push_back(euler_result(dr));
    cohomology_notes(rep.notes, dr);
    if (spec.phi) {
        CohomologyReport enh = enhanced_cohomology(spec, window);
        rep.results.push_back(euler_result(enh));
        cohomology_notes(rep.notes, enh);
    }
    rep.exit_code = combine_exit_code(rep.results);
    return rep;
}

ReportFile cmd_sen(const SpecFile& sf, const std::optional<std::string>& b_text) {
    ReportFile rep;
    rep.command = "sen";
    if (!flavor_is_absolute(sf.kind))
        throw Error("sen requires an absolute flavor (the recursion divides by a)");
    CrystalSpec spec = to_crystal_spec(sf);
    rep.results.push_back(check_sen_kernel(sf.a, sf.n_max, sf.m));
    rep.results.push_back(verify_sen_exactness(spec, sf.n_max, ValuationConfig{sf.prime},
                                               sf.cutoff));
    if (b_text) {
        SenElement b = parse_sen_rhs(*b_text, sf.n_max, sf.m);
        Timer timer;
        SenSolveResult sol = sen_solve(b, sf.a);
        CheckResult c;
        c.name = "solve(n_max=" + std::to_string(sf.n_max) + ")";
        c.ms = timer.ms();
        rep.results.push_back(c);
        rep.notes.push_back("f = " + format_sen(sol.f));
        rep.notes.push_back("top obstruction (X^[" + std::to_string(sf.n_max) +
                            "] coefficient) = " + format_series(sol.residual));
    }
    rep.exit_code = combine_exit_code(rep.results);
    return rep;
}

ReportFile cmd_realize(const SpecFile& sf, const std::optional<GroupElementData>& g) {
    ReportFile rep;
    rep.command = "realize";
    if (!flavor_is_absolute(sf.kind)) throw Error("realize requires an absolute flavor");
    CrystalSpec spec = to_crystal_spec(sf);
    int d = sf.d, m = sf.m;

    {
        Timer timer;
        SeriesMat id_mat = realize(spec, identity_element(d, m));
        CheckResult c;
        c.name = "realize-identity";
        if (!(id_mat == series_identity(sf.r, m))) {
            c.status = CheckStatus::Fail;
            c.witness = "realize(identity) is not the identity matrix";
        }
        c.ms = timer.ms();
        rep.results.push_back(c);
    }

    std::mt19937_64 rng(sf.seed);
    {
        std::uniform_int_distribution<int> coord(-2, 2);
        TruncatedSeries t_unit = ts_const(m, 1);
        if (m >= 2) t_unit.c[1] = 1;
        auto random_translation = [&] {
            GroupElementData h = identity_element(d, m);
            for (int& n : h.nvec) n = coord(rng);
            h.t_over_E = t_unit;
            return h;
        };
        Timer timer;
        CheckResult c;
        c.name = "translation-hom-law(pairs=20)";
        for (int trial = 0; trial < 20 && c.status == CheckStatus::Pass; ++trial) {
            GroupElementData g1 = random_translation();
            GroupElementData g2 = random_translation();
            GroupElementData g12 = identity_element(d, m);
            g12.t_over_E = t_unit;
            for (int s = 0; s < d; ++s)
                g12.nvec[static_cast<size_t>(s)] =
                    g1.nvec[static_cast<size_t>(s)] + g2.nvec[static_cast<size_t>(s)];
            SeriesMat lhs = realize(spec, g12);
            SeriesMat rhs = mat_mul(realize(spec, g1), realize(spec, g2));
            if (!(lhs == rhs)) {
                c.status = CheckStatus::Fail;
                c.witness = "pair " + std::to_string(trial) + ": n1 = (" + join_ints(g1.nvec) +
                            "), n2 = (" + join_ints(g2.nvec) + ")";
            }
        }
        c.ms = timer.ms();
        rep.results.push_back(c);
    }

    {
        TruncatedSeries x_g(m);
        if (m >= 2) {
            std::uniform_int_distribution<int> num(1, 3);
            x_g.c[1] = Rational(num(rng));
        }
        rep.results.push_back(check_realization_intertwining(spec, x_g));
    }

    if (g) {
        Timer timer;
        SeriesMat mat = realize(spec, *g);
        CheckResult c;
        c.name = "realize-element";
        c.ms = timer.ms();
        rep.results.push_back(c);
        rep.notes.push_back("g: n = (" + join_ints(g->nvec) + "), gE_over_E = " +
                            format_series(g->gE_over_E) + ", t_over_E = " +
                            format_series(g->t_over_E));
        note_mat(rep.notes, "realize(g)", mat);
    }
    rep.exit_code = combine_exit_code(rep.results);
    return rep;
}

}  // namespace pdcrystal
