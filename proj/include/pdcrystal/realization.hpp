#pragma once

#include <vector>

#include "pdcrystal/crystal.hpp"

namespace pdcrystal {

// A group element acting on the crystal, described by its effect on the period coordinates:
// the translation part nvec (one integer per geometric direction), the unit gE_over_E by
// which it rescales the coefficient generator, and the normalized translation cocycle value
// t_over_E multiplying the geometric exponent.
struct GroupElementData {
    std::vector<int> nvec;
    TruncatedSeries gE_over_E;
    TruncatedSeries t_over_E;
};

GroupElementData identity_element(int d, int m);

// The matrix of the group element: exp(t_over_E * sum_s n_s N_s) * S, where the arithmetic
// part S = sum_i x_g^[i] P_i with x_g = (gE_over_E - 1)/a and P_i = prod_{l<i}(a PHI - a l)
// on the flattened space, read back on the basis columns. The arithmetic series must be
// finite: either the operator products P_i vanish exactly for some i <= n_window, or x_g has
// zero constant term (divided powers beyond m - 1 then vanish); otherwise throws. The
// exponential is the finite sum of a nilpotent matrix; throws when the exponent is not
// nilpotent. Absolute flavors only.
SeriesMat realize(const CrystalSpec& spec, const GroupElementData& g, int n_window = 64);

// The shifted-spectrum intertwining S_1 flat(N_s) = flat(N_s) S_0 for every direction s,
// where S_c = sum_i flat(x_g^[i]-mult) prod_{l<i}(a (PHI - c) - a l), summed to the same cap
// as realize would use. Exact; follows from the enhanced relation.
CheckResult check_realization_intertwining(const CrystalSpec& spec, const TruncatedSeries& x_g,
                                           int n_window = 64);

}  // namespace pdcrystal
