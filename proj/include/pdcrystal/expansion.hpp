#pragma once

#include "pdcrystal/check.hpp"
#include "pdcrystal/pd.hpp"

namespace pdcrystal {

// The defining expansion (1 - Z Q)^{-P/Z} := sum_n (prod_{i=0}^{n-1} (P + iZ)) Q^[n],
// for scalar PD elements P, Z and a zero-constant-term Q, all in one ring.
PDElement neg_power_series(const PDElement& P, const PDElement& Z, const PDElement& Q);

// Operator-valued version: P is a square matrix over T_m, Z a scalar series; the n-th
// coefficient is the ordered product P (P + Z) ... (P + (n-1)Z).
PDElement neg_power_expand(const PDElement& Q, const SeriesMat& P, const TruncatedSeries& Z);

// Checks the two composition laws of the expansion on independent formal variables over Q,
// truncated at total degree <= bound:
//   (1)  (1-ZQ1)^{-P/Z} (1-ZQ2)^{-P/Z} = (1-Z(Q1+Q2-Z Q1 Q2))^{-P/Z}
//   (2)  (1-ZQ)^{-P1/Z} (1-ZQ)^{-P2/Z} = (1-ZQ)^{-(P1+P2)/Z}
CheckResult verify_formal_identities(int bound);

}  // namespace pdcrystal
