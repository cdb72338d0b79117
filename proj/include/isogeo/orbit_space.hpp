#pragma once

#include <cstddef>
#include <vector>

#include "isogeo/curve_state.hpp"
#include "isogeo/errors.hpp"
#include "isogeo/foliation.hpp"

namespace isogeo {

// A point of the orbit-space wedge C(pi/g) in polar coordinates. r equals the
// Euclidean norm of the lifted points; theta the tube distance to the first
// focal cone.
struct OrbitPoint {
    double r = 1.0;
    double theta = 0.0;
};

/**
 * Discrete curve in the wedge: ordered samples with a strictly increasing
 * arc-length parameter (Euclidean-polar arc length).
 *
 * A single-point polyline is allowed (degenerate, zero length). With two or
 * more points the arc parameters must be strictly increasing and consecutive
 * points distinct.
 */
class Polyline {
  public:
    Polyline() = default;

    // Chordal arc-length parametrisation computed from the points.
    explicit Polyline(std::vector<OrbitPoint> points);

    // Explicit arc parameters (e.g. from an integrated curve).
    Polyline(std::vector<double> s, std::vector<OrbitPoint> points);

    const std::vector<OrbitPoint>& points() const { return points_; }
    const std::vector<double>& arc() const { return s_; }
    std::size_t size() const { return points_.size(); }

    Polyline reversed() const;

  private:
    void validate() const;

    std::vector<double> s_;
    std::vector<OrbitPoint> points_;
};

// Weight of the conformal orbit-space metric g_c = V^2 (dr^2 + r^2 dtheta^2):
//   V(r, theta) = r^{n-1} * sin^{m1}(g theta/2) * cos^{m2}(g theta/2),
// the relative volume of the leaf represented by the point. Walls carry
// V = 0 and are rejected rather than returned.
double volume_density(const FoliationParams& p, const OrbitPoint& q);

// Length of a polyline with respect to g_c, which equals the relative volume
// of the generated hypersurface. Composite Simpson quadrature of V ds on the
// arc-length parameter.
double curve_length_gc(const FoliationParams& p, const Polyline& c);

// Geodesic curvature with respect to g_c of a unit-speed curve through
// `state` with tangent-angle rate alpha_rate = d(alpha)/ds:
//   kappa = (n cos(alpha)/r - h(theta) sin(alpha)/r - alpha') / V.
// For solutions of the profile ODE with prescribed mean curvature h~ this is
// exactly h~ / V.
double curvature_gc(const FoliationParams& p, const CurveState& state, double alpha_rate);

// Max |kappa_{g_c}| over interior samples of c, estimated from the samples by
// finite differences (degree-4 local fits on 5-point stencils). Near zero
// certifies c as a g_c-geodesic. Requires at least 5 samples.
double geodesic_residual(const FoliationParams& p, const Polyline& c);

} // namespace isogeo
