#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pdcrystal/commands.hpp"

using namespace pdcrystal;

namespace {

struct Options {
    std::string spec_path;
    std::optional<int> pd_degree;
    std::optional<std::string> window;
    std::optional<std::string> prime;
    std::optional<int> n_max;
    std::optional<long long> cutoff;
    std::optional<unsigned long long> seed;
    std::string format = "text";
    bool verify = false;
    std::optional<std::string> b_text;
    std::optional<std::string> g_path;
};

SpecFile load_with_overrides(const Options& opt) {
    SpecFile sf = load_spec_file(opt.spec_path);
    if (opt.pd_degree) {
        if (*opt.pd_degree < 0) throw ParseError("--pd-degree must be >= 0");
        sf.pd_degree = *opt.pd_degree;
    }
    if (opt.window) sf.window = parse_window(*opt.window, sf.d);
    if (opt.prime) {
        try {
            sf.prime = BigInt(*opt.prime);
        } catch (const std::exception&) {
            throw ParseError("bad prime '" + *opt.prime + "'");
        }
        if (sf.prime < 2) throw ParseError("prime must be >= 2");
    }
    if (opt.n_max) {
        if (*opt.n_max < 0) throw ParseError("--nmax must be >= 0");
        sf.n_max = *opt.n_max;
    }
    if (opt.cutoff) sf.cutoff = *opt.cutoff;
    if (opt.seed) sf.seed = *opt.seed;
    return sf;
}

int emit(const ReportFile& rep, const std::string& format) {
    std::cout << (format == "machine" ? render_report_machine(rep) : render_report_text(rep));
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic checks for truncated prismatic de Rham crystals"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--pd-degree", opt.pd_degree, "PD total-degree bound for tables/identities");
    app.add_option("--window", opt.window,
                   "cohomology multidegree window: 'lo:hi, ...' or a radius");
    app.add_option("--prime", opt.prime, "valuation prime for the smallness certificate");
    app.add_option("--nmax", opt.n_max, "Sen/smallness depth bound");
    app.add_option("--cutoff", opt.cutoff, "valuation cutoff for the smallness certificate");
    app.add_option("--seed", opt.seed, "seed for the sampled property checks");
    app.add_option("--format", opt.format, "report rendering")
        ->check(CLI::IsMember({"text", "machine"}));

    CLI::App* check = app.add_subcommand("check", "structural checks on a spec file");
    check->add_option("spec", opt.spec_path, "spec file")->required();
    CLI::App* stratify = app.add_subcommand("stratify", "build the stratification table");
    stratify->add_option("spec", opt.spec_path, "spec file")->required();
    stratify->add_flag("--verify", opt.verify, "also run cocycle and iteration checks");
    CLI::App* verify_cocycle =
        app.add_subcommand("verify-cocycle", "build and fully verify the stratification");
    verify_cocycle->add_option("spec", opt.spec_path, "spec file")->required();
    CLI::App* cohomology =
        app.add_subcommand("cohomology", "Betti numbers over the multidegree window");
    cohomology->add_option("spec", opt.spec_path, "spec file")->required();
    CLI::App* identities =
        app.add_subcommand("identities", "formal and simplicial identity suites");
    CLI::App* sen = app.add_subcommand("sen", "Sen kernel/exactness checks and solver");
    sen->add_option("spec", opt.spec_path, "spec file")->required();
    sen->add_option("--b", opt.b_text, "right-hand side: ';'-separated series coefficients");
    CLI::App* realize_cmd = app.add_subcommand("realize", "group-element realization checks");
    realize_cmd->add_option("spec", opt.spec_path, "spec file")->required();
    realize_cmd->add_option("--g", opt.g_path, "group-element file to realize");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (*identities) {
            int degree = opt.pd_degree ? *opt.pd_degree : 6;
            if (degree < 0) throw ParseError("--pd-degree must be >= 0");
            return emit(cmd_identities(degree), opt.format);
        }
        SpecFile sf = load_with_overrides(opt);
        if (*check) return emit(cmd_check(sf), opt.format);
        if (*stratify) return emit(cmd_stratify(sf, opt.verify), opt.format);
        if (*verify_cocycle) return emit(cmd_verify_cocycle(sf), opt.format);
        if (*cohomology) return emit(cmd_cohomology(sf), opt.format);
        if (*sen) return emit(cmd_sen(sf, opt.b_text), opt.format);
        if (*realize_cmd) {
            std::optional<GroupElementData> g;
            if (opt.g_path) g = load_group_element(*opt.g_path, sf.d, sf.m);
            return emit(cmd_realize(sf, g), opt.format);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
