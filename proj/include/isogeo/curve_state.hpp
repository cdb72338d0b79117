#pragma once

namespace isogeo {

/**
 * State of the reduced profile-curve ODE in the orbit-space wedge.
 *
 * s is Euclidean-polar arc length, (r, theta) the polar position, and alpha
 * the angle between the curve tangent and d/dtheta, so that
 * r' = sin(alpha), r*theta' = cos(alpha).
 */
struct CurveState {
    double s = 0.0;
    double r = 1.0;
    double theta = 0.0;
    double alpha = 0.0;
};

// Wraps an angle into (-pi, pi].
double normalize_angle(double a);

} // namespace isogeo
