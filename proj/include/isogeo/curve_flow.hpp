#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "isogeo/curve_state.hpp"
#include "isogeo/errors.hpp"
#include "isogeo/foliation.hpp"
#include "isogeo/orbit_space.hpp"

namespace isogeo {

// Derivatives of (r, theta, alpha) with respect to arc length.
struct OdeRhs {
    double dr = 0.0;
    double dtheta = 0.0;
    double dalpha = 0.0;
};

// Right-hand side of the reduced profile-curve system:
//   r' = sin(alpha), theta' = cos(alpha)/r,
//   alpha' = -h~ + n cos(alpha)/r - h(theta) sin(alpha)/r,
// where h~ is the prescribed mean curvature of the generated hypersurface and
// h the leaf mean curvature. Undefined on the walls (h singular).
OdeRhs ode_rhs(const FoliationParams& p, double h_tilde, const CurveState& st);

// Maps a boundary contact angle at the orbit point (R, theta0) to the initial
// shooting direction: alpha = pi - orientation * contact_angle, where
// orientation = +1 lifts the spherical conormal N to +d/(r dtheta). The curve
// leaves the boundary sphere along the inward conormal of the hypersurface.
CurveState initial_state_from_contact(const FoliationParams& p, double R, double theta0,
                                      double contact_angle, int n_orientation);

enum class StopReason {
    WallLower, // theta reached the lower stop (near theta = 0)
    WallUpper, // theta reached the upper stop (near theta = pi/g)
    Origin,    // r fell below r_min
    Escape,    // r exceeded r_max
    ArcLimit,  // arc length reached s_max
};

struct Termination {
    StopReason reason = StopReason::ArcLimit;
    CurveState state;
};

struct IntegrateOptions {
    double s_max = 200.0;
    double r_min = 1e-4;
    double r_max = 1e6;
    // Wall stop distance. Stopping well before the wall keeps the
    // wall-singular mode from swamping the trajectory; perpendicularity is
    // judged by extrapolation (classify) or section matching (shooting).
    double wall_eps = 1e-3;
    // Absolute theta stops; NaN means derive from wall_eps.
    double theta_stop_lo = std::numeric_limits<double>::quiet_NaN();
    double theta_stop_hi = std::numeric_limits<double>::quiet_NaN();
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    double init_step = 0.0; // 0 = automatic
    std::size_t max_steps = 2'000'000;
};

/**
 * An integrated profile curve: params, prescribed mean curvature, accepted
 * states (strictly increasing s, alpha stored normalized), and the
 * termination event. max_unit_speed_defect records the worst
 * |sin^2 a + cos^2 a - 1| seen at accepted states.
 */
struct SolutionCurve {
    FoliationParams params;
    double h_tilde = 0.0;
    std::vector<CurveState> samples;
    Termination termination;
    double max_unit_speed_defect = 0.0;

    Polyline to_polyline() const;
};

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) with PI step control
// and event location by bisection on the step.
SolutionCurve integrate(const FoliationParams& p, double h_tilde, const CurveState& init,
                        const IntegrateOptions& opts = {});

// ---------------------------------------------------------------------------
// Trajectory classification

enum class Wall { Lower, Upper };

struct ToOrigin {
    double s_end = 0.0;
};
struct HitsWallPerpendicular {
    Wall wall = Wall::Lower;
    double r_hit = 0.0;
    double angle_defect = 0.0; // |sin(alpha)| extrapolated at the wall
};
struct AsymptoticToCone {
    double theta_c = 0.0;
    double final_deviation = 0.0;
};
struct AsymptoticLine {
    Wall wall = Wall::Lower;
    double estimated_offset = 0.0; // fitted distance to the wall at s_end
};
struct Undetermined {
    std::string reason;
};

using CurveClass =
    std::variant<ToOrigin, HitsWallPerpendicular, AsymptoticToCone, AsymptoticLine, Undetermined>;

struct ClassifyOptions {
    double perp_sin_tol = 1e-3;     // |sin(alpha)| at the extrapolated wall
    double origin_theta_osc = 0.15; // allowed theta range over trailing window
    double line_slope_tol = 1e-3;   // |d(dist)/ds| of the trailing linear fit
    double window_frac = 0.25;      // trailing window fraction
};

CurveClass classify(const SolutionCurve& c, const ClassifyOptions& tol = {});

const char* wall_name(Wall w); // "theta=0" / "theta=pi/g"
std::string curve_class_name(const CurveClass& cls);

// ---------------------------------------------------------------------------
// Perpendicular-hit shooting

struct PerpendicularHit {
    double alpha0 = 0.0; // initial direction at p_M
    Wall wall = Wall::Lower;
    double r_hit = 0.0;  // wall radius of the matched regular solution
    double defect = 0.0; // residual angle mismatch at the matching section
};

struct ShootOptions {
    double theta_match = 0.05;  // matching section distance from the wall
    double theta_seed = 1e-5;   // expansion seed distance for the regular family
    double defect_target = 1e-8;
    int max_bisect = 80;
    IntegrateOptions integrate; // base options for the forward shots
};

// Scans initial directions over [alpha_lo, alpha_hi], brackets sign changes
// of the perpendicular-hit defect for each wall, and refines each bracket by
// bisection. The defect compares the shot against the one-parameter family of
// wall-regular solutions at a matching section away from the wall, where the
// comparison is well conditioned; the family itself is continued from a
// near-wall series seed in its stable direction.
std::vector<PerpendicularHit> shoot_perpendicular(const FoliationParams& p, double h_tilde,
                                                  const OrbitPoint& p_M, double alpha_lo,
                                                  double alpha_hi, int n_samples,
                                                  const ShootOptions& opts = {});

// ---------------------------------------------------------------------------
// Direction sweeps

struct SweepEntry {
    double alpha0 = 0.0;
    CurveClass cls;
};

// Classification of n_dirs equispaced initial directions from p_M. Errors in
// a single direction are recorded as Undetermined, never abort the sweep.
// Entries are ordered by direction index.
std::vector<SweepEntry> sweep(const FoliationParams& p, double h_tilde, const OrbitPoint& p_M,
                              int n_dirs, const IntegrateOptions& iopts = {},
                              const ClassifyOptions& copts = {});

// CSV export with columns exactly (s, r, theta, alpha, x, y).
void write_curve_csv(std::ostream& os, const SolutionCurve& c);

} // namespace isogeo
