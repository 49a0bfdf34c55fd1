#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "json.hpp"
#include "pdcrystal/commands.hpp"
#include "pdcrystal/io.hpp"

using namespace pdcrystal;
using doctest::Contains;

namespace {

const char* kRelativeText = R"(# comment line
flavor = relative-smooth
d = 2
r = 2
m = 3
beta = 0, 1, -2   # eps - 2 eps^2
N1[0] = 0, 1 ; 0, 0
N1[2] = 0, 1/3 ; 0, 0
N2[0] = 0, -5 ; 0, 0
window = 0:1, -2:2
pd_degree = 4
prime = 5
n_max = 9
cutoff = 7
seed = 42
)";

const char* kLogText = R"(
flavor = absolute-log
d = 1
r = 2
m = 2
a = 3/2
pi = 2
N1[0] = 0, 1 ; 0, 0
phi[0] = 1, 0 ; 0, 0
)";

std::string strip_generated_at(const std::string& s) {
    std::string out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
        if (line.find("generated_at") == std::string::npos) out += line + "\n";
    return out;
}

bool has(const std::string& s, const std::string& fragment) {
    return s.find(fragment) != std::string::npos;
}

}  // namespace

TEST_CASE("parse fills every field") {
    SpecFile sf = parse_spec_file(kRelativeText);
    CHECK(sf.kind == FlavorKind::RelativeSmooth);
    CHECK(sf.d == 2);
    CHECK(sf.r == 2);
    CHECK(sf.m == 3);
    REQUIRE(sf.beta.has_value());
    CHECK(sf.beta->c[1] == 1);
    CHECK(sf.beta->c[2] == -2);
    CHECK(!sf.phi.has_value());
    REQUIRE(sf.N.size() == 2);
    CHECK(sf.N[0].at(0, 1).c[0] == 1);
    CHECK(sf.N[0].at(0, 1).c[2] == Rational(1, 3));
    CHECK(sf.N[1].at(0, 1).c[0] == -5);
    REQUIRE(sf.window.has_value());
    CHECK(sf.window->lo == std::vector<int>{0, -2});
    CHECK(sf.window->hi == std::vector<int>{1, 2});
    CHECK(sf.pd_degree == 4);
    CHECK(sf.prime == 5);
    CHECK(sf.n_max == 9);
    CHECK(sf.cutoff == 7);
    CHECK(sf.seed == 42);
}

TEST_CASE("defaults for omitted optional keys") {
    SpecFile sf = parse_spec_file("flavor = arithmetic-point\nd = 0\nr = 1\nm = 2\na = -1\n");
    CHECK(sf.pd_degree == 6);
    CHECK(sf.prime == 2);
    CHECK(sf.n_max == 12);
    CHECK(sf.cutoff == 10);
    CHECK(sf.seed == 1);
    CHECK(!sf.window.has_value());
    REQUIRE(sf.phi.has_value());  // absolute: omitted grids mean the zero matrix
    CHECK(mat_is_zero(*sf.phi));
    CHECK(sf.N.empty());
}

TEST_CASE("serialize then parse is the identity") {
    for (const char* text : {kRelativeText, kLogText}) {
        SpecFile sf = parse_spec_file(text);
        std::string canon = serialize_spec_file(sf);
        CHECK(parse_spec_file(canon) == sf);
        CHECK(serialize_spec_file(parse_spec_file(canon)) == canon);
    }
}

TEST_CASE("canonical rendering is stable") {
    SpecFile sf = parse_spec_file(kLogText);
    CHECK(serialize_spec_file(sf) ==
          "flavor = absolute-log\n"
          "d = 1\n"
          "r = 2\n"
          "m = 2\n"
          "a = 3/2\n"
          "pi = 2\n"
          "N1[0] = 0, 1 ; 0, 0\n"
          "phi[0] = 1, 0 ; 0, 0\n"
          "pd_degree = 6\n"
          "prime = 2\n"
          "n_max = 12\n"
          "cutoff = 10\n"
          "seed = 1\n");
}

TEST_CASE("parse errors point at the offending line") {
    auto expect = [](const std::string& text, const char* fragment) {
        CHECK_THROWS_WITH_AS(parse_spec_file(text), Contains(fragment), ParseError);
    };
    expect("flavor = relative-smooth\nbogus line\n", "line 2");
    expect("flavor = nowhere\n", "unknown flavor");
    expect("flavor = relative-log\nd = 1\nr = 1\nm = 1\nd = 2\n", "duplicate key");
    expect("flavor = relative-log\nd = 1\nr = 1\nm = 1\npi = 2\nfoo = 1\n", "unknown key");
    expect("d = 1\nr = 1\nm = 1\n", "missing required key 'flavor'");
    expect("flavor = relative-log\npi = 2\nr = 1\nm = 1\n", "missing required key 'd'");
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 0\nm = 1\n", "r and m must be >= 1");
    // grid shapes
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 2\nm = 1\nN1[0] = 0, 1\n",
           "expected 2 rows");
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 2\nm = 1\nN1[0] = 0 ; 0, 0\n",
           "expected 2 entries per row");
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 1\nm = 2\nN1[2] = 0\n", ">= m");
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 1\nm = 1\nN2[0] = 0\n", "out of range");
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 1\nm = 1\nN1[0] = 1/0\n", "line 6");
    // flavor-conditional keys
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 1\nm = 1\na = 1\n", "absolute flavors");
    expect("flavor = absolute-smooth\nd = 1\nr = 1\nm = 1\n", "require key 'a'");
    expect("flavor = absolute-smooth\nd = 1\nr = 1\nm = 1\na = 1\npi = 2\n", "log flavors");
    expect("flavor = absolute-log\nd = 1\nr = 1\nm = 1\na = 1\n", "require key 'pi'");
    expect("flavor = relative-smooth\nd = 1\nr = 1\nm = 2\n", "requires key 'beta'");
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 1\nm = 2\nbeta = 0, 1\n",
           "relative-smooth flavor");
    expect("flavor = relative-log\npi = 2\nd = 1\nr = 1\nm = 1\nphi[0] = 1\n",
           "absolute flavors");
    expect("flavor = arithmetic-point\nd = 0\nr = 1\nm = 1\na = 1\nwindow = 2\n",
           "geometric direction");
}

TEST_CASE("window grammar") {
    DegreeWindow box = parse_window("2", 3);
    CHECK(box.lo == std::vector<int>{-2, -2, -2});
    CHECK(box.hi == std::vector<int>{2, 2, 2});
    DegreeWindow w = parse_window("0:1, -2:2", 2);
    CHECK(w.lo == std::vector<int>{0, -2});
    CHECK(w.hi == std::vector<int>{1, 2});
    CHECK_THROWS_WITH_AS(parse_window("0:1", 2), Contains("one lo:hi range per direction"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_window("3:1", 1), Contains("empty"), ParseError);
    CHECK_THROWS_WITH_AS(parse_window("x", 1), Contains("integer"), ParseError);
    CHECK_THROWS_WITH_AS(parse_window("0:1:2", 1), Contains("lo:hi"), ParseError);

    SpecFile sf = parse_spec_file(kLogText);
    CHECK(effective_window(sf) == window_box(1, 2));
    sf.window = parse_window("0:3", 1);
    CHECK(effective_window(sf) == *sf.window);
}

TEST_CASE("to_crystal_spec carries flavor data over") {
    SpecFile rel = parse_spec_file(kRelativeText);
    CrystalSpec rs = to_crystal_spec(rel);
    CHECK(rs.flavor.kind == FlavorKind::RelativeSmooth);
    CHECK(rs.flavor.beta == *rel.beta);
    CHECK(rs.d == 2);
    CHECK(rs.N == rel.N);
    CHECK(!rs.phi.has_value());

    SpecFile log = parse_spec_file(kLogText);
    CrystalSpec ls = to_crystal_spec(log);
    CHECK(ls.flavor.kind == FlavorKind::AbsoluteLog);
    CHECK(ls.a == Rational(3, 2));
    CHECK(ls.phi == log.phi);
}

TEST_CASE("group element files") {
    GroupElementData g = parse_group_element("", 2, 2);
    CHECK(g.nvec == std::vector<int>{0, 0});
    CHECK(g.gE_over_E == ts_const(2, 1));
    CHECK(g.t_over_E == ts_const(2, 1));

    g = parse_group_element("n = 1, -2\ngE_over_E = 1, 3\nt_over_E = 1, 1\n", 2, 2);
    CHECK(g.nvec == std::vector<int>{1, -2});
    CHECK(g.gE_over_E.c[1] == 3);
    CHECK(g.t_over_E.c[1] == 1);

    CHECK_THROWS_WITH_AS(parse_group_element("n = 1\n", 2, 1), Contains("expected 2 integers"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_group_element("q = 1\n", 1, 1), Contains("unknown key"),
                         ParseError);
    CHECK_THROWS_WITH_AS(load_group_element("/nonexistent-g-file", 1, 1), Contains("cannot open"),
                         ParseError);
}

TEST_CASE("exit code combination") {
    auto result = [](CheckStatus s) {
        CheckResult c;
        c.status = s;
        return c;
    };
    CHECK(combine_exit_code({}) == 0);
    CHECK(combine_exit_code({result(CheckStatus::Pass)}) == 0);
    CHECK(combine_exit_code({result(CheckStatus::Pass), result(CheckStatus::Inconclusive)}) == 2);
    CHECK(combine_exit_code({result(CheckStatus::Fail), result(CheckStatus::Inconclusive)}) == 1);
    CHECK(combine_exit_code({result(CheckStatus::Inconclusive), result(CheckStatus::Fail)}) == 1);
}

TEST_CASE("report renderings") {
    ReportFile rep;
    rep.command = "check";
    CheckResult ok;
    ok.name = "integrability";
    ok.ms = 1.25;
    CheckResult bad;
    bad.name = "cocycle(degree=6)";
    bad.status = CheckStatus::Fail;
    bad.witness = "first mismatch at X1^[1]";
    rep.results = {ok, bad};
    rep.notes = {"table entries: 3"};
    rep.exit_code = combine_exit_code(rep.results);

    std::string text = render_report_text(rep);
    CHECK(has(text, "command: check"));
    CHECK(has(text, "[pass] integrability"));
    CHECK(has(text, "[fail] cocycle(degree=6) -- first mismatch at X1^[1]"));
    CHECK(has(text, "note: table entries: 3"));
    CHECK(has(text, "exit: 1"));

    std::string m1 = render_report_machine(rep);
    std::string m2 = render_report_machine(rep);
    CHECK(strip_generated_at(m1) == strip_generated_at(m2));
    nlohmann::json j = nlohmann::json::parse(m1);
    CHECK(j["command"] == "check");
    CHECK(j["exit_code"] == 1);
    CHECK(j["results"].size() == 2);
    CHECK(j["results"][1]["status"] == "fail");
    CHECK(j["results"][1]["witness"] == "first mismatch at X1^[1]");
    CHECK(j.contains("generated_at"));
    CHECK(!j["results"][0].contains("ms"));
}

TEST_CASE("cmd_check outcomes") {
    SpecFile good = parse_spec_file(kLogText);
    ReportFile rep = cmd_check(good);
    CHECK(rep.exit_code == 0);
    CHECK(rep.results.size() == 4);  // integrability, nilpotence, enhanced, smallness

    // E12 E23 = E13 but E23 E12 = 0: the pair does not commute
    SpecFile bad = parse_spec_file(
        "flavor = relative-log\npi = 2\nd = 2\nr = 3\nm = 1\n"
        "N1[0] = 0, 1, 0 ; 0, 0, 0 ; 0, 0, 0\n"
        "N2[0] = 0, 0, 0 ; 0, 0, 1 ; 0, 0, 0\n");
    rep = cmd_check(bad);
    CHECK(rep.exit_code == 1);
    bool failed = false;
    for (const CheckResult& c : rep.results)
        if (c.name == "integrability") {
            failed = c.status == CheckStatus::Fail;
            CHECK(has(c.witness, "N_1, N_2"));
        }
    CHECK(failed);

    // phi a Jordan block: the smallness products never vanish and no valuation grows
    SpecFile refuse = parse_spec_file(
        "flavor = absolute-smooth\nd = 1\nr = 2\nm = 1\na = 1\nphi[0] = 0, 1 ; 0, 0\n");
    rep = cmd_check(refuse);
    CHECK(rep.exit_code == 2);
}

TEST_CASE("cmd_stratify and cmd_verify_cocycle") {
    SpecFile sf = parse_spec_file(kLogText);
    sf.pd_degree = 3;
    ReportFile rep = cmd_stratify(sf, false);
    CHECK(rep.exit_code == 0);
    CHECK(rep.results.size() == 1);
    CHECK(has(rep.notes[0], "table entries: 10"));
    bool has_n_entry = false;
    for (const std::string& n : rep.notes)
        if (n == "G[0; 1][0] = 0, 1 ; 0, 0") has_n_entry = true;
    CHECK(has_n_entry);

    rep = cmd_stratify(sf, true);
    CHECK(rep.exit_code == 0);
    CHECK(rep.results.size() == 3);

    rep = cmd_verify_cocycle(sf);
    CHECK(rep.exit_code == 0);
    CHECK(rep.results.size() == 3);
    CHECK(rep.notes.empty());

    // an unmet build precondition is an input error, not a check failure
    SpecFile bad = parse_spec_file(
        "flavor = relative-log\npi = 2\nd = 2\nr = 3\nm = 1\n"
        "N1[0] = 0, 1, 0 ; 0, 0, 0 ; 0, 0, 0\n"
        "N2[0] = 0, 0, 0 ; 0, 0, 1 ; 0, 0, 0\n");
    CHECK_THROWS_WITH_AS(cmd_stratify(bad, false), Contains("integrability"), Error);
}

TEST_CASE("cmd_cohomology on the zero connection") {
    SpecFile sf = parse_spec_file(
        "flavor = relative-log\npi = 2\nd = 2\nr = 1\nm = 2\nwindow = 0:0, 0:0\n");
    ReportFile rep = cmd_cohomology(sf);
    CHECK(rep.exit_code == 0);
    CHECK(rep.results.size() == 1);  // no enhanced complex without phi
    bool found = false;
    for (const std::string& n : rep.notes)
        if (n == "k=(0,0): h = 2 4 2 (euler 0)") found = true;
    CHECK(found);

    SpecFile abs = parse_spec_file(kLogText);
    rep = cmd_cohomology(abs);
    CHECK(rep.results.size() == 2);
    CHECK(rep.exit_code == 0);
}

TEST_CASE("cmd_sen solves and checks") {
    SpecFile sf = parse_spec_file(
        "flavor = arithmetic-point\nd = 0\nr = 1\nm = 1\na = -1\nn_max = 6\n");
    ReportFile rep = cmd_sen(sf, std::string("0 ; 1"));
    CHECK(rep.exit_code == 0);
    REQUIRE(rep.results.size() == 3);
    bool factorial = false, obstruction = false;
    for (const std::string& n : rep.notes) {
        if (has(n, "(1)*X^[2]") && has(n, "(2)*X^[3]") && has(n, "(120)*X^[6]"))
            factorial = true;
        if (has(n, "top obstruction") && has(n, "720")) obstruction = true;
    }
    CHECK(factorial);
    CHECK(obstruction);

    SpecFile rel = parse_spec_file("flavor = relative-log\npi = 2\nd = 1\nr = 1\nm = 1\n");
    CHECK_THROWS_WITH_AS(cmd_sen(rel, std::nullopt), Contains("absolute flavor"), Error);
    CHECK_THROWS_WITH_AS(cmd_sen(sf, std::string("0 ; 1 ; 0, 0")), Contains("more than m"),
                         ParseError);
}

TEST_CASE("cmd_realize suite and element dump") {
    SpecFile sf = parse_spec_file(kLogText);
    ReportFile rep = cmd_realize(sf, std::nullopt);
    CHECK(rep.exit_code == 0);
    CHECK(rep.results.size() == 3);

    GroupElementData g = identity_element(1, 2);
    g.nvec[0] = 1;
    rep = cmd_realize(sf, g);
    CHECK(rep.exit_code == 0);
    CHECK(rep.results.size() == 4);
    bool dumped = false;
    for (const std::string& n : rep.notes)
        if (n == "realize(g)[0] = 1, 1 ; 0, 1") dumped = true;
    CHECK(dumped);

    SpecFile rel = parse_spec_file("flavor = relative-log\npi = 2\nd = 1\nr = 1\nm = 1\n");
    CHECK_THROWS_WITH_AS(cmd_realize(rel, std::nullopt), Contains("absolute flavor"), Error);
}
