#pragma once

#include <vector>

#include "pdcrystal/check.hpp"
#include "pdcrystal/flavor.hpp"
#include "pdcrystal/pd.hpp"

namespace pdcrystal {

// Variable layout of the level-p nerve ring: X_1..X_p first (absolute flavors), then
// Y_{s,1}..Y_{s,p} for each geometric direction s = 1..d.
struct NerveLayout {
    FlavorKind kind = FlavorKind::RelativeSmooth;
    int d = 0;
    int level = 0;

    bool has_x() const { return flavor_is_absolute(kind); }
    int var_count() const { return level * ((has_x() ? 1 : 0) + d); }
    int x_index(int j) const;         // j in 1..level
    int y_index(int s, int j) const;  // s in 1..d, j in 1..level
};

PDRingPtr nerve_ring(const Flavor& f, int level, int bound, int m);

// A ring homomorphism between nerve rings, given by its generator images and the image of
// the coefficient generator eps. Application substitutes: a coefficient c = sum_k c_k eps^k
// maps to sum_k c_k e_image^k, and each variable to the divided powers of its image.
// Divided powers and eps-powers are cached eagerly, so application is const and pure.
struct RingHom {
    PDRingPtr source;
    PDRingPtr target;
    std::vector<PDElement> var_images;  // scalar, zero constant term
    bool e_fixed = true;
    PDElement e_image;  // meaningful when !e_fixed

    std::vector<std::vector<PDElement>> dp;  // dp[v][k] = var_images[v]^[k]
    std::vector<PDElement> e_pows;           // e_image^k, k = 0..m-1
};

RingHom make_hom(PDRingPtr source, PDRingPtr target, std::vector<PDElement> var_images);
RingHom make_hom(PDRingPtr source, PDRingPtr target, std::vector<PDElement> var_images,
                 PDElement e_image);

PDElement hom_apply(const RingHom& h, const PDElement& x);

// The i-th face N^from_level -> N^{from_level+1}, 0 <= i <= from_level+1.
RingHom face(const Flavor& f, int from_level, int i, int bound, int m);

// The i-th degeneracy N^from_level -> N^{from_level-1}, 0 <= i <= from_level-1.
RingHom degeneracy(const Flavor& f, int from_level, int i, int bound, int m);

// Verifies the cosimplicial identities on all generators and on eps, modulo PD degree >
// degree, at internal truncation m = degree + 1 (so no eps headroom is lost under the
// moving-eps faces): face-face compatibilities from base levels 0 and 1, all
// degeneracy-face compositions at levels 0..2 (including the identity cases), and the
// degeneracy-degeneracy exchange down to levels 0 and 1.
CheckResult check_simplicial_identities(const Flavor& f, int degree);

}  // namespace pdcrystal
