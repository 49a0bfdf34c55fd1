#pragma once

#include <vector>

#include "pdcrystal/crystal.hpp"

namespace pdcrystal {

// Inclusive per-direction bounds on the multidegrees to inspect (length d each; empty at
// d = 0, where the single empty multidegree is inspected).
struct DegreeWindow {
    std::vector<int> lo, hi;

    bool operator==(const DegreeWindow& o) const = default;
};

DegreeWindow window_box(int d, int radius);  // [-radius, radius]^d

struct DegreeCohomology {
    std::vector<int> k;       // multidegree
    std::vector<int> betti;   // h^0 .. h^top (top = d, or d+1 for enhanced)
    long long euler = 0;      // alternating sum of the betti numbers
};

struct CohomologyReport {
    bool enhanced = false;
    int d = 0, r = 1, m = 1;
    DegreeWindow window;
    std::vector<DegreeCohomology> degrees;            // every multidegree in the window
    bool euler_balanced = true;                       // every euler matches the expected value
    std::vector<std::vector<int>> nonzero_boundary;   // window-boundary multidegrees with
                                                      // nonzero cohomology (possible clipping)
};

// Cohomology of the Koszul complex of the commuting flattened operators
// A_i = flat(N_i) + k_i flat(beta-mult) on K^{r m}, one complex per multidegree k.
// Exact linear algebra throughout.
CohomologyReport dr_cohomology(const CrystalSpec& spec, const DegreeWindow& window);

// Two-row totalization with the arithmetic operator: T^n = C^n + C^{n-1} with differential
// (x, y) -> (d x, (PHI - n) x - d y), PHI the flattened phi + euler. Absolute flavors only.
CohomologyReport enhanced_cohomology(const CrystalSpec& spec, const DegreeWindow& window);

}  // namespace pdcrystal
