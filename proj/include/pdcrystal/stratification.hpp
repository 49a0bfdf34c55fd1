#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdcrystal/cosimplicial.hpp"
#include "pdcrystal/crystal.hpp"

namespace pdcrystal {

// Coefficient key: arithmetic divided-power index i (0 for relative flavors) and geometric
// multidegree n (length d).
struct StratKey {
    int i = 0;
    std::vector<int> n;

    int total() const;
    bool operator<(const StratKey& o) const { return i < o.i || (i == o.i && n < o.n); }
    bool operator==(const StratKey& o) const { return i == o.i && n == o.n; }
};

// The stratification series sum_{i,n} G_{i,n} X_1^[i] Y_1^[n] as its coefficient table,
// complete (zeros included) up to total degree <= degree.
struct StratificationTable {
    Flavor flavor;
    int d = 0;
    int r = 1;
    int m = 1;
    Rational a;
    int degree = 0;
    std::map<StratKey, SeriesMat> coeffs;
};

// Build order for the two equivalent recursions; their agreement is a theorem exercised in
// tests, not an assumption of the builder.
enum class StratOrder {
    GeometricFirst,   // geometric chain at i = 0, then arithmetic steps with shift i + |n|
    ArithmeticFirst,  // arithmetic chain at n = 0, then geometric steps at fixed i
};

// Populates the table by the step recursions
//   G_{i, n+1_s} = (N_s + n_s beta Id) G_{i,n}
//   G_{i+1, n}   = a (phi G_{i,n} + euler(G_{i,n})) - a (i + |n|) G_{i,n}
// from G_{0,0} = Id. Throws Error naming the violated structural check.
StratificationTable build_stratification(const CrystalSpec& spec, int degree,
                                         StratOrder order = StratOrder::GeometricFirst);

// Materializes the series as an operator-valued element of the level-1 nerve ring, pushes it
// through the three faces to level 2, and checks p2(E) * p0(E) = p1(E) and sigma0(E) = Id,
// coefficientwise modulo PD degree > degree (default: the table's own degree).
CheckResult verify_cocycle(const StratificationTable& table, int degree = -1);

// Reads the connection back off the degree-1 coefficients: N_s = G_{0,1_s} and, for absolute
// flavors, phi = a^{-1} G_{1,0}.
CrystalSpec extract_connection(const StratificationTable& table);

// Converse direction: checks that every adjacent pair of stored coefficients satisfies the
// step recursions for the connection extracted from the table itself.
CheckResult check_iteration(const StratificationTable& table);

// Specialize the series at scalar values for the level-1 variables ("X1", "Y1_1", ...,
// keyed by name; missing variables default to 0). Divided powers of the values over Q.
SeriesMat evaluate(const StratificationTable& table,
                   const std::map<std::string, TruncatedSeries>& assignment);

}  // namespace pdcrystal
