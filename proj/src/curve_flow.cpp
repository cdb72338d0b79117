#include "isogeo/curve_flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

namespace isogeo {

double normalize_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi)
        a += two_pi;
    else if (a > std::numbers::pi)
        a -= two_pi;
    return a;
}

OdeRhs ode_rhs(const FoliationParams& p, double h_tilde, const CurveState& st) {
    if (!(st.r > 0.0) || !(st.theta > 0.0) || !(st.theta < p.wedge_angle()))
        throw DomainError("ode_rhs: state outside the open wedge");
    const double h = spherical_mean_curvature(p, st.theta);
    const double sa = std::sin(st.alpha), ca = std::cos(st.alpha);
    return OdeRhs{sa, ca / st.r, -h_tilde + p.n * ca / st.r - h * sa / st.r};
}

CurveState initial_state_from_contact(const FoliationParams& p, double R, double theta0,
                                      double contact_angle, int n_orientation) {
    if (!(R > 0.0))
        throw DomainError("boundary radius must be positive");
    if (!(theta0 > 0.0) || !(theta0 < p.wedge_angle()))
        throw DomainError("boundary leaf must be interior to the wedge");
    if (n_orientation != 1 && n_orientation != -1)
        throw DomainError("n_orientation must be +1 or -1");
    CurveState st;
    st.s = 0.0;
    st.r = R;
    st.theta = theta0;
    st.alpha = normalize_angle(std::numbers::pi - n_orientation * contact_angle);
    return st;
}

namespace {

using Vec3 = std::array<double, 3>; // (r, theta, alpha)

struct RhsEval {
    Vec3 f{};
    bool ok = false;
};

// Stage evaluations may probe outside the wedge while a trial step is being
// sized; flag instead of throwing so the controller can shrink the step.
RhsEval guarded_rhs(const FoliationParams& p, double h_tilde, const Vec3& y) {
    RhsEval e;
    if (!(y[0] > 0.0) || !(y[1] > 0.0) || !(y[1] < p.wedge_angle()))
        return e;
    const double x = 0.5 * p.g * y[1];
    const double h = 0.5 * p.g * (p.m1 / std::tan(x) - p.m2 * std::tan(x));
    const double sa = std::sin(y[2]), ca = std::cos(y[2]);
    e.f = {sa, ca / y[0], -h_tilde + p.n * ca / y[0] - h * sa / y[0]};
    e.ok = std::isfinite(e.f[0]) && std::isfinite(e.f[1]) && std::isfinite(e.f[2]);
    return e;
}

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

struct StepResult {
    Vec3 y{};
    double err = std::numeric_limits<double>::infinity();
    bool ok = false;
};

StepResult dp_step(const FoliationParams& p, double h_tilde, const Vec3& y0, double h,
                   double abs_tol, double rel_tol) {
    StepResult out;
    auto eval = [&](const Vec3& y) { return guarded_rhs(p, h_tilde, y); };
    const RhsEval k1 = eval(y0);
    if (!k1.ok)
        return out;
    Vec3 y;
    for (int i = 0; i < 3; ++i)
        y[i] = y0[i] + h * A21 * k1.f[i];
    const RhsEval k2 = eval(y);
    if (!k2.ok)
        return out;
    for (int i = 0; i < 3; ++i)
        y[i] = y0[i] + h * (A31 * k1.f[i] + A32 * k2.f[i]);
    const RhsEval k3 = eval(y);
    if (!k3.ok)
        return out;
    for (int i = 0; i < 3; ++i)
        y[i] = y0[i] + h * (A41 * k1.f[i] + A42 * k2.f[i] + A43 * k3.f[i]);
    const RhsEval k4 = eval(y);
    if (!k4.ok)
        return out;
    for (int i = 0; i < 3; ++i)
        y[i] = y0[i] + h * (A51 * k1.f[i] + A52 * k2.f[i] + A53 * k3.f[i] + A54 * k4.f[i]);
    const RhsEval k5 = eval(y);
    if (!k5.ok)
        return out;
    for (int i = 0; i < 3; ++i)
        y[i] = y0[i] +
               h * (A61 * k1.f[i] + A62 * k2.f[i] + A63 * k3.f[i] + A64 * k4.f[i] + A65 * k5.f[i]);
    const RhsEval k6 = eval(y);
    if (!k6.ok)
        return out;
    Vec3 y5;
    for (int i = 0; i < 3; ++i)
        y5[i] = y0[i] + h * (B1 * k1.f[i] + B3 * k3.f[i] + B4 * k4.f[i] + B5 * k5.f[i] +
                             B6 * k6.f[i]);
    const RhsEval k7 = eval(y5);
    if (!k7.ok)
        return out;

    double err_sq = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double e = h * (E1 * k1.f[i] + E3 * k3.f[i] + E4 * k4.f[i] + E5 * k5.f[i] +
                              E6 * k6.f[i] + E7 * k7.f[i]);
        const double sc = abs_tol + rel_tol * std::max(std::abs(y0[i]), std::abs(y5[i]));
        err_sq += (e / sc) * (e / sc);
    }
    out.y = y5;
    out.err = std::sqrt(err_sq / 3.0);
    out.ok = std::isfinite(out.err);
    return out;
}

struct EventSpec {
    double theta_lo, theta_hi, r_min, r_max;
};

// Positive inside the admissible region; index identifies the event.
double event_value(const EventSpec& ev, int which, const Vec3& y) {
    switch (which) {
    case 0:
        return y[1] - ev.theta_lo;
    case 1:
        return ev.theta_hi - y[1];
    case 2:
        return y[0] - ev.r_min;
    default:
        return ev.r_max - y[0];
    }
}

StopReason event_reason(int which) {
    switch (which) {
    case 0:
        return StopReason::WallLower;
    case 1:
        return StopReason::WallUpper;
    case 2:
        return StopReason::Origin;
    default:
        return StopReason::Escape;
    }
}

} // namespace

Polyline SolutionCurve::to_polyline() const {
    std::vector<double> s(samples.size());
    std::vector<OrbitPoint> pts(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        s[i] = samples[i].s;
        pts[i] = OrbitPoint{samples[i].r, samples[i].theta};
    }
    return Polyline(std::move(s), std::move(pts));
}

SolutionCurve integrate(const FoliationParams& p, double h_tilde, const CurveState& init,
                        const IntegrateOptions& opts) {
    const double wedge = p.wedge_angle();
    EventSpec ev;
    ev.theta_lo = std::isnan(opts.theta_stop_lo) ? opts.wall_eps : opts.theta_stop_lo;
    ev.theta_hi = std::isnan(opts.theta_stop_hi) ? wedge - opts.wall_eps : opts.theta_stop_hi;
    ev.r_min = opts.r_min;
    ev.r_max = opts.r_max;

    if (!std::isfinite(init.r) || !std::isfinite(init.theta) || !std::isfinite(init.alpha))
        throw NonFinite("integrate: non-finite initial state");
    Vec3 y{init.r, init.theta, init.alpha};
    double s = init.s;
    for (int which = 0; which < 4; ++which)
        if (event_value(ev, which, y) <= 0.0)
            throw DomainError("integrate: initial state outside the admissible region");

    SolutionCurve curve;
    curve.params = p;
    curve.h_tilde = h_tilde;
    const double s_end = init.s + opts.s_max;

    auto record = [&](double si, const Vec3& yi) {
        CurveState st;
        st.s = si;
        st.r = yi[0];
        st.theta = yi[1];
        st.alpha = normalize_angle(yi[2]);
        const double sa = std::sin(yi[2]), ca = std::cos(yi[2]);
        curve.max_unit_speed_defect =
            std::max(curve.max_unit_speed_defect, std::abs(sa * sa + ca * ca - 1.0));
        curve.samples.push_back(st);
    };
    record(s, y);

    const RhsEval f0 = guarded_rhs(p, h_tilde, y);
    if (!f0.ok)
        throw DomainError("integrate: RHS undefined at the initial state");
    double fmag = std::max({std::abs(f0.f[0]), std::abs(f0.f[1]), std::abs(f0.f[2])});
    double h = opts.init_step > 0.0 ? opts.init_step : std::min(0.01 / (1.0 + fmag), opts.s_max);
    h = std::min(h, opts.max_step);

    double err_prev = 1.0;
    for (std::size_t step = 0; step < opts.max_steps; ++step) {
        // Treat a negligible remnant as arrival; a micro-step to land exactly
        // on s_end would create a degenerate sample spacing.
        if (s >= s_end || s_end - s <= 1e-9 * std::max(1.0, std::abs(s_end))) {
            curve.termination = {StopReason::ArcLimit, curve.samples.back()};
            return curve;
        }
        bool clipped = false;
        if (s + h >= s_end) {
            h = s_end - s;
            clipped = true;
        }
        if (h < 1e-14 * std::max(1.0, std::abs(s)))
            throw StepSizeUnderflow("integrate: step size underflow at s = " + std::to_string(s));

        const StepResult trial = dp_step(p, h_tilde, y, h, opts.abs_tol, opts.rel_tol);
        if (!trial.ok || trial.err > 1.0) {
            const double fac =
                trial.ok ? std::max(0.2, 0.9 * std::pow(trial.err, -0.2)) : 0.25;
            h *= fac;
            continue;
        }

        // Event check on the accepted span; locate the first crossing by
        // bisection with single fixed-size sub-steps from the step start.
        int hit = -1;
        for (int which = 0; which < 4; ++which)
            if (event_value(ev, which, trial.y) <= 0.0) {
                hit = which;
                break;
            }
        if (hit >= 0) {
            double lo = 0.0, hi = h;
            Vec3 y_hi = trial.y;
            for (int it = 0; it < 90 && (hi - lo) > 1e-16 * h; ++it) {
                const double mid = 0.5 * (lo + hi);
                const StepResult sub = dp_step(p, h_tilde, y, mid, opts.abs_tol, opts.rel_tol);
                if (!sub.ok) {
                    hi = mid;
                    continue;
                }
                bool inside = true;
                for (int which = 0; which < 4; ++which)
                    if (event_value(ev, which, sub.y) <= 0.0) {
                        inside = false;
                        break;
                    }
                if (inside) {
                    lo = mid;
                } else {
                    hi = mid;
                    y_hi = sub.y;
                }
            }
            int which_hit = 3;
            double worst = std::numeric_limits<double>::infinity();
            for (int which = 0; which < 4; ++which) {
                const double v = event_value(ev, which, y_hi);
                if (v < worst) {
                    worst = v;
                    which_hit = which;
                }
            }
            s += hi;
            record(s, y_hi);
            curve.termination = {event_reason(which_hit), curve.samples.back()};
            return curve;
        }

        s += h;
        y = trial.y;
        record(s, y);
        if (clipped && s >= s_end) {
            curve.termination = {StopReason::ArcLimit, curve.samples.back()};
            return curve;
        }

        const double err = std::max(trial.err, 1e-10);
        double fac = 0.9 * std::pow(err, -0.17) * std::pow(err_prev, 0.04);
        fac = std::clamp(fac, 0.2, 5.0);
        h = std::min(h * fac, opts.max_step);
        err_prev = err;
    }
    throw StepSizeUnderflow("integrate: max step count exceeded");
}

// ---------------------------------------------------------------------------
// Classification

const char* wall_name(Wall w) { return w == Wall::Lower ? "theta=0" : "theta=pi/g"; }

std::string curve_class_name(const CurveClass& cls) {
    struct Visitor {
        std::string operator()(const ToOrigin&) const { return "ToOrigin"; }
        std::string operator()(const HitsWallPerpendicular&) const {
            return "HitsWallPerpendicular";
        }
        std::string operator()(const AsymptoticToCone&) const { return "AsymptoticToCone"; }
        std::string operator()(const AsymptoticLine&) const { return "AsymptoticLine"; }
        std::string operator()(const Undetermined&) const { return "Undetermined"; }
    };
    return std::visit(Visitor{}, cls);
}

namespace {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double var_first_half = 0.0;
    double var_second_half = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    const double det = n * sxx - sx * sx;
    f.slope = det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
    f.intercept = (sy - f.slope * sx) / n;
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = y[i] - (f.intercept + f.slope * x[i]);
        (i < half ? f.var_first_half : f.var_second_half) += resid * resid;
    }
    f.var_first_half /= std::max<std::size_t>(half, 1);
    f.var_second_half /= std::max<std::size_t>(n - half, 1);
    return f;
}

} // namespace

CurveClass classify(const SolutionCurve& c, const ClassifyOptions& tol) {
    const auto& S = c.samples;
    if (S.size() < 2)
        return Undetermined{"fewer than 2 samples"};
    const FoliationParams& p = c.params;
    const double wedge = p.wedge_angle();
    const CurveState& end = c.termination.state;

    switch (c.termination.reason) {
    case StopReason::Origin: {
        const std::size_t w0 = S.size() - std::max<std::size_t>(S.size() / 4, 2);
        double lo = S[w0].theta, hi = S[w0].theta;
        for (std::size_t i = w0; i < S.size(); ++i) {
            lo = std::min(lo, S[i].theta);
            hi = std::max(hi, S[i].theta);
        }
        if (hi - lo < tol.origin_theta_osc)
            return ToOrigin{end.s};
        return Undetermined{"origin reached with swinging theta"};
    }
    case StopReason::WallLower:
    case StopReason::WallUpper: {
        const bool lower = c.termination.reason == StopReason::WallLower;
        const double theta_target = lower ? 0.0 : wedge;
        const OdeRhs f = ode_rhs(p, c.h_tilde, end);
        if (std::abs(std::cos(end.alpha)) < 0.1)
            return Undetermined{"grazing wall contact"};
        const double dalpha_dtheta = f.dalpha / f.dtheta;
        const double alpha_wall = end.alpha + dalpha_dtheta * (theta_target - end.theta);
        const double defect = std::abs(std::sin(alpha_wall));
        if (defect < tol.perp_sin_tol)
            return HitsWallPerpendicular{lower ? Wall::Lower : Wall::Upper, end.r, defect};
        return Undetermined{"non-perpendicular wall contact"};
    }
    case StopReason::Escape:
    case StopReason::ArcLimit: {
        const std::size_t wlen = std::max<std::size_t>(S.size() / 4, 8);
        if (wlen >= S.size())
            return Undetermined{"too few samples for trailing-window analysis"};
        const std::size_t w0 = S.size() - wlen;
        if (c.h_tilde == 0.0) {
            if (p.m2 < 1)
                return Undetermined{"degenerate family has no cone"};
            const double theta_c = minimal_cone_angle(p);
            double m1dev = 0.0, m2dev = 0.0;
            const std::size_t mid = w0 + wlen / 2;
            for (std::size_t i = w0; i < S.size(); ++i) {
                const double dev = std::abs(S[i].theta - theta_c);
                (i < mid ? m1dev : m2dev) = std::max(i < mid ? m1dev : m2dev, dev);
            }
            if (m2dev <= m1dev * (1.0 + 1e-9) && m2dev < 0.3 * wedge)
                return AsymptoticToCone{theta_c, std::abs(end.theta - theta_c)};
            return Undetermined{"no decreasing approach to the cone"};
        }
        // Prescribed mean curvature: look for a stabilized distance to a
        // wall-parallel line over the trailing window.
        std::vector<double> sv(wlen), dlo(wlen), dhi(wlen);
        for (std::size_t i = 0; i < wlen; ++i) {
            const CurveState& st = S[w0 + i];
            sv[i] = st.s;
            dlo[i] = st.r * std::sin(st.theta);
            dhi[i] = st.r * std::sin(wedge - st.theta);
        }
        const LinearFit flo = fit_line(sv, dlo);
        const LinearFit fhi = fit_line(sv, dhi);
        auto admissible = [&](const LinearFit& f) {
            return std::abs(f.slope) < tol.line_slope_tol &&
                   f.var_second_half <= f.var_first_half * 1.05 + 1e-12;
        };
        const bool alo = admissible(flo), ahi = admissible(fhi);
        if (alo || ahi) {
            const bool pick_lo = alo && (!ahi || std::abs(flo.slope) <= std::abs(fhi.slope));
            const LinearFit& f = pick_lo ? flo : fhi;
            return AsymptoticLine{pick_lo ? Wall::Lower : Wall::Upper,
                                  f.intercept + f.slope * end.s};
        }
        return Undetermined{"no stabilized wall-parallel distance"};
    }
    }
    return Undetermined{"unknown termination"};
}

// ---------------------------------------------------------------------------
// Perpendicular-hit shooting

namespace {

// Mirror conjugacy of the system: (theta, alpha, m1, m2, h~) ->
// (pi/g - theta, pi - alpha, m2, m1, -h~) maps solutions to solutions.
FoliationParams mirror_params(const FoliationParams& p) {
    FoliationParams q = p;
    std::swap(q.m1, q.m2);
    return q;
}

struct RegularSection {
    double r = 0.0;
    double alpha = 0.0;
    bool ok = false;
};

// Continues the wall-regular solution with wall radius r_hit from a series
// seed near theta = 0 out to the matching section theta_match, integrating in
// the direction away from the wall (time reversal: alpha += pi, h~ -> -h~),
// which is the stable direction for the wall mode.
RegularSection regular_family_at_section(const FoliationParams& p, double h_tilde, double r_hit,
                                         double theta_match, double theta_seed,
                                         const IntegrateOptions& base) {
    RegularSection out;
    const double a = (p.n + r_hit * h_tilde) / (1.0 + p.m1);
    const double delta = a * theta_seed;
    const double r_seed = r_hit * (1.0 + 0.5 * a * theta_seed * theta_seed);

    CurveState seed;
    seed.s = 0.0;
    seed.r = r_seed;
    seed.theta = theta_seed;
    seed.alpha = normalize_angle(delta); // reversed tangent of alpha = pi + delta

    IntegrateOptions o = base;
    o.theta_stop_lo = theta_seed * 0.25;
    o.theta_stop_hi = theta_match;
    o.r_min = 1e-12;
    o.r_max = 1e12;
    o.s_max = 10.0 * (r_hit + 1.0) * (theta_match + 1.0);
    o.max_step = std::numeric_limits<double>::infinity();

    try {
        const SolutionCurve cont = integrate(p, -h_tilde, seed, o);
        if (cont.termination.reason != StopReason::WallUpper)
            return out;
        out.r = cont.termination.state.r;
        out.alpha = normalize_angle(cont.termination.state.alpha + std::numbers::pi);
        out.ok = true;
    } catch (const Error&) {
    }
    return out;
}

struct DefectEval {
    double psi = std::numeric_limits<double>::quiet_NaN();
    bool matched = false; // reached the section; r_hit is meaningful
    double r_hit = 0.0;
};

// Signed defect for the lower wall: angle mismatch against the wall-regular
// family at the matching section if the shot reaches it, otherwise the
// turning signature at the closest approach (alpha relative to pi).
DefectEval lower_wall_defect(const FoliationParams& p, double h_tilde, const OrbitPoint& p_M,
                             double alpha0, const ShootOptions& opts, double theta_match) {
    DefectEval out;
    IntegrateOptions o = opts.integrate;
    o.theta_stop_lo = theta_match;
    CurveState init{0.0, p_M.r, p_M.theta, normalize_angle(alpha0)};
    SolutionCurve traj;
    try {
        traj = integrate(p, h_tilde, init, o);
    } catch (const Error&) {
        return out;
    }

    if (traj.termination.reason == StopReason::WallLower) {
        const double r_m = traj.termination.state.r;
        const double alpha_m = traj.termination.state.alpha;
        // Solve r_reg(theta_match; r_hit) = r_m for r_hit (secant, the map is
        // a near-identity).
        const double a0 = (p.n + r_m * h_tilde) / (1.0 + p.m1);
        double x0 = r_m / (1.0 + 0.5 * a0 * theta_match * theta_match);
        double x1 = x0 * 1.001 + 1e-9;
        RegularSection s0 = regular_family_at_section(p, h_tilde, x0, theta_match,
                                                      opts.theta_seed, opts.integrate);
        RegularSection s1 = regular_family_at_section(p, h_tilde, x1, theta_match,
                                                      opts.theta_seed, opts.integrate);
        if (!s0.ok || !s1.ok)
            return out;
        double g0 = s0.r - r_m, g1 = s1.r - r_m;
        RegularSection sect = s1;
        for (int it = 0; it < 40 && std::abs(g1) > 1e-12 * std::max(1.0, r_m); ++it) {
            if (g1 == g0)
                break;
            const double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
            x0 = x1;
            g0 = g1;
            x1 = x2;
            sect = regular_family_at_section(p, h_tilde, x1, theta_match, opts.theta_seed,
                                             opts.integrate);
            if (!sect.ok)
                return out;
            g1 = sect.r - r_m;
        }
        out.matched = true;
        out.r_hit = x1;
        out.psi = normalize_angle(alpha_m - sect.alpha);
        return out;
    }

    // Turning signature at the closest approach to the wall.
    std::size_t k = 0;
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        if (traj.samples[i].theta < traj.samples[k].theta)
            k = i;
    out.psi = normalize_angle(traj.samples[k].alpha - std::numbers::pi);
    return out;
}

} // namespace

std::vector<PerpendicularHit> shoot_perpendicular(const FoliationParams& p, double h_tilde,
                                                  const OrbitPoint& p_M, double alpha_lo,
                                                  double alpha_hi, int n_samples,
                                                  const ShootOptions& opts) {
    std::vector<PerpendicularHit> hits;
    if (n_samples < 2 || !(alpha_hi > alpha_lo))
        return hits;
    if (!(p_M.r > 0.0) || !(p_M.theta > 0.0) || !(p_M.theta < p.wedge_angle()))
        throw DomainError("shoot_perpendicular: p_M must be interior");

    const double wedge = p.wedge_angle();
    const FoliationParams pm = mirror_params(p);
    const OrbitPoint p_M_mirror{p_M.r, wedge - p_M.theta};

    for (const Wall wall : {Wall::Lower, Wall::Upper}) {
        const bool lower = wall == Wall::Lower;
        const FoliationParams& pp = lower ? p : pm;
        const OrbitPoint& q = lower ? p_M : p_M_mirror;
        const double ht = lower ? h_tilde : -h_tilde;
        const double theta_match =
            std::min({opts.theta_match, 0.5 * q.theta, 0.25 * wedge});

        // Directions are scanned in the original frame; the upper wall is
        // handled by mapping each direction into the mirrored problem.
        auto to_frame = [&](double a0) {
            return lower ? a0 : normalize_angle(std::numbers::pi - a0);
        };
        auto defect = [&](double a0) { return lower_wall_defect(pp, ht, q, to_frame(a0), opts, theta_match); };

        std::vector<double> grid(n_samples), psi(n_samples);
        std::vector<bool> valid(n_samples);
        for (int i = 0; i < n_samples; ++i) {
            grid[i] = alpha_lo + (alpha_hi - alpha_lo) * i / (n_samples - 1);
            const DefectEval e = defect(grid[i]);
            psi[i] = e.psi;
            valid[i] = std::isfinite(e.psi);
        }

        for (int i = 0; i + 1 < n_samples; ++i) {
            if (!valid[i] || !valid[i + 1] || !(psi[i] * psi[i + 1] < 0.0))
                continue;
            double a = grid[i], b = grid[i + 1];
            double fa = psi[i];
            DefectEval best;
            double best_abs = std::numeric_limits<double>::infinity();
            double best_alpha = a;
            for (int it = 0; it < opts.max_bisect; ++it) {
                const double mid = 0.5 * (a + b);
                const DefectEval e = defect(mid);
                if (!std::isfinite(e.psi))
                    break;
                if (e.matched && std::abs(e.psi) < best_abs) {
                    best = e;
                    best_abs = std::abs(e.psi);
                    best_alpha = mid;
                    if (best_abs < opts.defect_target)
                        break;
                }
                if (fa * e.psi <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = e.psi;
                }
                if (b - a < 1e-15 * std::max(1.0, std::abs(a)))
                    break;
            }
            if (best.matched && best_abs < opts.defect_target) {
                PerpendicularHit hit;
                hit.alpha0 = normalize_angle(best_alpha);
                hit.wall = wall;
                hit.r_hit = best.r_hit;
                hit.defect = std::abs(best.psi);
                bool duplicate = false;
                for (const auto& other : hits)
                    if (other.wall == wall && std::abs(other.alpha0 - hit.alpha0) < 1e-9)
                        duplicate = true;
                if (!duplicate)
                    hits.push_back(hit);
            }
        }
    }
    return hits;
}

std::vector<SweepEntry> sweep(const FoliationParams& p, double h_tilde, const OrbitPoint& p_M,
                              int n_dirs, const IntegrateOptions& iopts,
                              const ClassifyOptions& copts) {
    if (n_dirs < 8)
        throw DomainError("sweep needs n_dirs >= 8");
    std::vector<SweepEntry> out;
    out.reserve(n_dirs);
    for (int i = 0; i < n_dirs; ++i) {
        const double alpha0 =
            normalize_angle(-std::numbers::pi + 2.0 * std::numbers::pi * i / n_dirs);
        SweepEntry entry;
        entry.alpha0 = alpha0;
        try {
            const SolutionCurve c =
                integrate(p, h_tilde, CurveState{0.0, p_M.r, p_M.theta, alpha0}, iopts);
            entry.cls = classify(c, copts);
        } catch (const Error& e) {
            entry.cls = Undetermined{std::string("integrate failed: ") + e.what()};
        }
        out.push_back(std::move(entry));
    }
    return out;
}

void write_curve_csv(std::ostream& os, const SolutionCurve& c) {
    os << "s,r,theta,alpha,x,y\n";
    char buf[160];
    for (const CurveState& st : c.samples) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", st.s, st.r,
                      st.theta, st.alpha, st.r * std::cos(st.theta), st.r * std::sin(st.theta));
        os << buf;
    }
}

} // namespace isogeo
