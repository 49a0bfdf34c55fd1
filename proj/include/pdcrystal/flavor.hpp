#pragma once

#include <string>

#include "pdcrystal/series.hpp"

namespace pdcrystal {

// The five nerve flavors. Relative flavors have only geometric variables Y_{s,j} and a
// geometric twist series beta (forced to eps for the log instantiation); absolute flavors
// add the arithmetic variables X_j with twist unit 1 + a X_1 and a moving coefficient
// generator eps; the arithmetic point is the absolute flavor with d = 0.
enum class FlavorKind {
    RelativeSmooth,
    RelativeLog,
    AbsoluteSmooth,
    AbsoluteLog,
    ArithmeticPoint,
};

inline bool flavor_is_relative(FlavorKind k) {
    return k == FlavorKind::RelativeSmooth || k == FlavorKind::RelativeLog;
}
inline bool flavor_is_absolute(FlavorKind k) { return !flavor_is_relative(k); }

const char* flavor_name(FlavorKind k);
FlavorKind flavor_from_name(const std::string& s);  // throws ParseError

struct Flavor {
    FlavorKind kind = FlavorKind::RelativeSmooth;
    int d = 0;                // number of geometric directions
    Rational a;               // arithmetic twist parameter (absolute flavors)
    TruncatedSeries beta;     // geometric twist series (relative flavors), zero constant term
};

Flavor relative_smooth(int d, TruncatedSeries beta);
Flavor relative_log(int d, int m);  // beta = eps in T_m
Flavor absolute_smooth(int d, const Rational& a);
Flavor absolute_log(int d, const Rational& a);
Flavor arithmetic_point(const Rational& a);

// Shape checks: d = 0 exactly for ArithmeticPoint, d >= 1 otherwise; relative beta has zero
// constant term; RelativeLog beta = eps. Throws Error.
void validate_flavor(const Flavor& f);

// The geometric twist series at truncation m: beta for relative flavors (re-truncated to m:
// padded with zeros upward, coefficients dropped downward — both are the canonical maps
// between truncation levels), eps for absolute flavors. Throws for ArithmeticPoint (d = 0).
TruncatedSeries flavor_beta(const Flavor& f, int m);

}  // namespace pdcrystal
