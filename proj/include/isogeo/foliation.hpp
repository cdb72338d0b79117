#pragma once

#include <vector>

#include "isogeo/errors.hpp"

namespace isogeo {

/**
 * Multiplicity data of an isoparametric foliation of the unit sphere S^n(1).
 *
 * g is the number of distinct principal curvatures of a leaf, (m1, m2) the
 * alternating multiplicities. The leaf dimension satisfies
 * n - 1 = g*(m1+m2)/2, which fixes the ambient sphere dimension n.
 */
struct FoliationParams {
    int g = 0;
    int m1 = 0;
    int m2 = 0;
    int n = 0;           // dimension of the ambient sphere S^n(1)
    int ambient_dim = 0; // n + 1, dimension of the surrounding Euclidean space

    // Half-opening of the orbit-space wedge, pi/g.
    double wedge_angle() const;
};

// Validates (g, m1, m2) and derives the dimensions. g must be one of
// {1,2,3,4,6}; odd g forces m1 == m2; g*(m1+m2)/2 must be a positive integer.
//
// The degenerate family g = 1, m2 = 0 is only accepted when
// `allow_degenerate_g1` is set; nothing downstream is tuned for it.
FoliationParams validate_params(int g, int m1, int m2, bool allow_degenerate_g1 = false);

// Relative volume of the leaf at tube distance theta from the first focal
// submanifold: sin^{m1}(g*theta/2) * cos^{m2}(g*theta/2). The overall
// constant is normalised to 1; only ratios and log-derivatives matter.
double leaf_volume_profile(const FoliationParams& p, double theta);

// Mean curvature of the leaf at tube distance theta, with respect to the unit
// normal pointing toward the first focal submanifold:
//   h(theta) = (g/2) * (m1*cot(g*theta/2) - m2*tan(g*theta/2)).
// Equals d/dtheta log leaf_volume_profile.
double spherical_mean_curvature(const FoliationParams& p, double theta);

// The unique zero of h on (0, pi/g): theta_c = (2/g) * atan(sqrt(m1/m2)).
// The cone over the leaf at theta_c is minimal.
double minimal_cone_angle(const FoliationParams& p);

// All admissible (g, m1, m2) with g*(m1+m2)/2 <= max_half_dim
// (m1, m2 >= 1; odd g only with m1 == m2).
std::vector<FoliationParams> admissible_params(int max_half_dim);

} // namespace isogeo
