#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdcrystal/check.hpp"
#include "pdcrystal/flavor.hpp"
#include "pdcrystal/matrix.hpp"

namespace pdcrystal {

// Matrix data of a rank-r crystal over T_m: d commuting nilpotent geometric operators
// N_1..N_d and, for absolute flavors, the arithmetic operator phi. The arithmetic operator
// acts on coordinates as the full E-connection phi + euler, so every identity involving phi
// below carries the entrywise euler-derivation correction; for eps-free matrices this
// reduces to the plain matrix identity.
struct CrystalSpec {
    Flavor flavor;
    int d = 0;
    int r = 1;
    int m = 1;
    Rational a;
    std::vector<SeriesMat> N;
    std::optional<SeriesMat> phi;
};

CrystalSpec make_crystal_spec(Flavor flavor, int r, int m, const Rational& a,
                              std::vector<SeriesMat> N, std::optional<SeriesMat> phi);

void validate_spec_shape(const CrystalSpec& spec);  // throws Error on bad shape

// [N_i, N_j] = 0 for all pairs, exact.
CheckResult check_integrability(const CrystalSpec& spec);

// Each N_i nilpotent over T_m (equivalently mod eps); witness lists the least vanishing powers.
CheckResult check_nilpotence(const CrystalSpec& spec);

// phi N_i - N_i phi + euler(N_i) = N_i for all i: the operator-level commutator
// [phi + euler, N_i] = N_i on coordinate vectors.
CheckResult check_enhanced_relation(const CrystalSpec& spec);

// f(PHI - 1) N_i = N_i f(PHI) on the flattened space for a polynomial f (coeffs low-to-high),
// PHI = the flattened operator phi + euler. Follows from the enhanced relation by induction.
bool polynomial_intertwining(const CrystalSpec& spec, const std::vector<Rational>& f);

enum class SmallnessMode { ExactVanishing, ValuationGrowth, Refusal };

const char* smallness_mode_name(SmallnessMode mode);

// Certificate that a^n * prod_{i<n}(PHI - i) tends to zero, PHI the flattened phi + euler.
// ExactVanishing: the product is exactly zero at n_star. ValuationGrowth: the minimal entry
// p-valuation passes `cutoff` at n_star and never decreases beyond its last minimum within
// the inspected window n <= n_max. Refusal is inconclusive, never a disproof.
struct SmallnessCertificate {
    SmallnessMode mode = SmallnessMode::Refusal;
    int n_star = 0;
    std::string details;
};

SmallnessCertificate certify_a_small(const SeriesMat& phi, const Rational& a,
                                     const ValuationConfig& cfg, int n_max, long long cutoff);

// Element of the Laurent-graded module: finitely many multidegrees k in Z^d, each carrying a
// length-r coordinate vector over T_m.
struct GradedElement {
    int d = 0;
    int r = 1;
    int m = 1;
    std::map<std::vector<int>, std::vector<TruncatedSeries>> components;
};

// The i-th geometric operator on multidegree k: N_i + beta * k_i * Id (twist-Leibniz rule).
GradedElement apply_nabla(const CrystalSpec& spec, int i, const GradedElement& x);

}  // namespace pdcrystal
