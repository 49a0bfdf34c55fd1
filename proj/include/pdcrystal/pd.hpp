#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pdcrystal/matrix.hpp"

namespace pdcrystal {

// Free divided-power algebra over T_m on named variables, truncated at a total-degree bound.
// The basis is the divided-power one: the monomial with exponent vector (a_v) stands for
// prod_v X_v^[a_v], so X^[a] X^[b] = C(a+b, a) X^[a+b].
struct PDRing {
    std::vector<std::string> vars;
    int bound = 0;
    int m = 1;

    bool operator==(const PDRing& o) const {
        return vars == o.vars && bound == o.bound && m == o.m;
    }
};

using PDRingPtr = std::shared_ptr<const PDRing>;
using Expo = std::vector<int>;

PDRingPtr pd_ring(std::vector<std::string> vars, int bound, int m);

// Sparse element with matrix coefficients; scalars are the 1x1 case and share every code path.
struct PDElement {
    PDRingPtr ring;
    int rows = 1, cols = 1;
    std::map<Expo, SeriesMat> terms;  // zero coefficients are pruned

    bool operator==(const PDElement& o) const {
        return *ring == *o.ring && rows == o.rows && cols == o.cols && terms == o.terms;
    }
};

BigInt binomial(int n, int k);
int expo_total(const Expo& e);

PDElement pd_zero(const PDRingPtr& ring, int rows = 1, int cols = 1);
PDElement pd_const(const PDRingPtr& ring, const SeriesMat& c);
PDElement pd_const(const PDRingPtr& ring, const TruncatedSeries& c);
PDElement pd_const(const PDRingPtr& ring, const Rational& c);
PDElement pd_one(const PDRingPtr& ring);
PDElement pd_var(const PDRingPtr& ring, int v);  // X_v^[1]

void pd_accumulate(PDElement& x, const Expo& e, const SeriesMat& c);

PDElement pd_add(const PDElement& x, const PDElement& y);
PDElement pd_sub(const PDElement& x, const PDElement& y);
PDElement pd_neg(const PDElement& x);
PDElement pd_scale(const Rational& k, const PDElement& x);
PDElement pd_scale(const TruncatedSeries& k, const PDElement& x);

// Divided-power product with the binomial structure constants. 1x1 coefficients broadcast
// against matrix ones; matrix-matrix coefficients multiply in the written order.
PDElement pd_mul(const PDElement& x, const PDElement& y);

bool pd_is_zero(const PDElement& x);
bool pd_has_constant_term(const PDElement& x);
SeriesMat pd_constant_term(const PDElement& x);
const SeriesMat* pd_coeff(const PDElement& x, const Expo& e);  // nullptr when absent

// (1 + u)^{-1} for u with zero constant term; throws NonUnitError otherwise.
PDElement pd_inv_one_plus(const PDElement& u);

// u^[k] = u^k / k! for scalar u with zero constant term.
PDElement divided_power(const PDElement& u, int k);

PDElement pd_pow(const PDElement& u, int k);

std::string format_pd(const PDElement& x);

// Human-readable witness for x != y: the first differing monomial and the coefficient
// delta entry. Empty string when equal.
std::string pd_first_difference(const PDElement& x, const PDElement& y);

}  // namespace pdcrystal
