#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdcrystal/cohomology.hpp"
#include "pdcrystal/crystal.hpp"
#include "pdcrystal/realization.hpp"

namespace pdcrystal {

// In-memory form of a .spec input file. Matrices are entered as row-major rational grids per
// eps-degree ("N1[0] = 0, 1 ; 0, 0"); grids that are zero at a degree may be omitted, so an
// absent phi block for an absolute flavor means the zero matrix.
struct SpecFile {
    FlavorKind kind = FlavorKind::RelativeSmooth;
    int d = 0;
    int r = 1;
    int m = 1;
    Rational a;                           // absolute flavors only
    std::optional<Rational> pi;           // log flavors only
    std::optional<TruncatedSeries> beta;  // relative-smooth only (coefficients low-to-high)
    std::vector<SeriesMat> N;             // d matrices, r x r over T_m
    std::optional<SeriesMat> phi;         // absolute flavors only
    int pd_degree = 6;
    std::optional<DegreeWindow> window;   // cohomology multidegrees; default radius-2 box
    BigInt prime = 2;
    int n_max = 12;
    long long cutoff = 10;
    unsigned long long seed = 1;

    bool operator==(const SpecFile& o) const = default;
};

// "key = value" lines, '#' comments; throws ParseError naming the offending line.
SpecFile parse_spec_file(const std::string& text);
SpecFile load_spec_file(const std::string& path);

// Canonical rendering; parse_spec_file(serialize_spec_file(sf)) == sf.
std::string serialize_spec_file(const SpecFile& sf);

CrystalSpec to_crystal_spec(const SpecFile& sf);

// Group-element file for the realize command: optional keys n (d integers), gE_over_E and
// t_over_E (unit series, coefficients low-to-high). Missing keys default to the identity
// element's values.
GroupElementData parse_group_element(const std::string& text, int d, int m);
GroupElementData load_group_element(const std::string& path, int d, int m);

// The window to use for cohomology: the file's, or the radius-2 box.
DegreeWindow effective_window(const SpecFile& sf);

// "lo:hi, lo:hi, ..." (one range per direction) or a single radius integer.
DegreeWindow parse_window(const std::string& text, int d);
std::string format_window(const DegreeWindow& w);

// One eps-degree slice of a matrix in the grid syntax: "a, b ; c, d".
std::string format_series_mat_slice(const SeriesMat& mat, int k);

// Outcome of one CLI command: named check results plus free-form data notes.
struct ReportFile {
    std::string command;
    std::vector<CheckResult> results;
    std::vector<std::string> notes;
    int exit_code = 0;
};

// 0 all pass, 1 any fail, 2 inconclusive results only.
int combine_exit_code(const std::vector<CheckResult>& results);

std::string render_report_text(const ReportFile& rep);

// One JSON object; deterministic for fixed inputs except the generated_at stamp (timings are
// deliberately omitted).
std::string render_report_machine(const ReportFile& rep);

}  // namespace pdcrystal
