#include "isogeo/orbit_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace isogeo {

namespace {

double chord(const OrbitPoint& a, const OrbitPoint& b) {
    const double ax = a.r * std::cos(a.theta), ay = a.r * std::sin(a.theta);
    const double bx = b.r * std::cos(b.theta), by = b.r * std::sin(b.theta);
    return std::hypot(bx - ax, by - ay);
}

void require_interior(const FoliationParams& p, const OrbitPoint& q) {
    if (!(q.r > 0.0))
        throw DomainError("orbit point needs r > 0, got r = " + std::to_string(q.r));
    if (!(q.theta > 0.0) || !(q.theta < p.wedge_angle()))
        throw DomainError("orbit point on or outside a wall: theta = " + std::to_string(q.theta));
}

// Integral over [a, b] of the quadratic interpolating (x0,f0), (x1,f1), (x2,f2).
double quad3_integral(double x0, double x1, double x2, double f0, double f1, double f2, double a,
                      double b) {
    auto basis = [](double xa, double xb, double xc, double lo, double hi) {
        // integral of (x-xb)(x-xc) / ((xa-xb)(xa-xc)) over [lo, hi]
        const double den = (xa - xb) * (xa - xc);
        auto antider = [&](double x) {
            return x * x * x / 3.0 - 0.5 * (xb + xc) * x * x + xb * xc * x;
        };
        return (antider(hi) - antider(lo)) / den;
    };
    return f0 * basis(x0, x1, x2, a, b) + f1 * basis(x1, x0, x2, a, b) +
           f2 * basis(x2, x0, x1, a, b);
}

// Fornberg finite-difference weights: weights[j][k] multiplies f(x[j]) in the
// approximation of the k-th derivative at z, for k = 0..max_order.
void fd_weights(double z, const double* x, int n, int max_order,
                std::vector<std::array<double, 3>>& c) {
    c.assign(n, {0.0, 0.0, 0.0});
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
}

} // namespace

Polyline::Polyline(std::vector<OrbitPoint> points) : points_(std::move(points)) {
    s_.resize(points_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i > 0)
            acc += chord(points_[i - 1], points_[i]);
        s_[i] = acc;
    }
    validate();
}

Polyline::Polyline(std::vector<double> s, std::vector<OrbitPoint> points)
    : s_(std::move(s)), points_(std::move(points)) {
    if (s_.size() != points_.size())
        throw DomainError("polyline: arc parameter and point counts differ");
    validate();
}

void Polyline::validate() const {
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(s_[i] > s_[i - 1]))
            throw DomainError("polyline: arc parameter must be strictly increasing");
        if (chord(points_[i - 1], points_[i]) == 0.0)
            throw DomainError("polyline: consecutive points must be distinct");
    }
}

Polyline Polyline::reversed() const {
    std::vector<OrbitPoint> pts(points_.rbegin(), points_.rend());
    std::vector<double> s(s_.size());
    const double total = s_.empty() ? 0.0 : s_.back();
    for (std::size_t i = 0; i < s_.size(); ++i)
        s[i] = total - s_[s_.size() - 1 - i];
    return Polyline(std::move(s), std::move(pts));
}

double volume_density(const FoliationParams& p, const OrbitPoint& q) {
    require_interior(p, q);
    return std::pow(q.r, p.n - 1) * leaf_volume_profile(p, q.theta);
}

double curve_length_gc(const FoliationParams& p, const Polyline& c) {
    const auto& pts = c.points();
    const auto& s = c.arc();
    if (pts.empty())
        return 0.0;
    std::vector<double> f(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        f[i] = volume_density(p, pts[i]);
    if (pts.size() == 1)
        return 0.0;
    if (pts.size() == 2)
        return 0.5 * (f[0] + f[1]) * (s[1] - s[0]);

    double total = 0.0;
    std::size_t i = 0;
    // Simpson over consecutive interval pairs; a leftover final interval is
    // integrated with the quadratic through the last three samples.
    while (i + 2 < pts.size()) {
        total += quad3_integral(s[i], s[i + 1], s[i + 2], f[i], f[i + 1], f[i + 2], s[i], s[i + 2]);
        i += 2;
    }
    if (i + 1 < pts.size()) {
        const std::size_t m = pts.size() - 1;
        total +=
            quad3_integral(s[m - 2], s[m - 1], s[m], f[m - 2], f[m - 1], f[m], s[m - 1], s[m]);
    }
    return total;
}

double curvature_gc(const FoliationParams& p, const CurveState& st, double alpha_rate) {
    const OrbitPoint q{st.r, st.theta};
    const double v = volume_density(p, q);
    const double h = spherical_mean_curvature(p, st.theta);
    return (p.n * std::cos(st.alpha) / st.r - h * std::sin(st.alpha) / st.r - alpha_rate) / v;
}

double geodesic_residual(const FoliationParams& p, const Polyline& c) {
    const auto& pts = c.points();
    const auto& s = c.arc();
    if (pts.size() < 5)
        throw TooFewSamples("geodesic_residual needs at least 5 samples, got " +
                            std::to_string(pts.size()));
    for (const auto& q : pts)
        require_interior(p, q);

    double worst = 0.0;
    std::vector<std::array<double, 3>> w;
    for (std::size_t i = 2; i + 2 < pts.size(); ++i) {
        const double* sx = &s[i - 2];
        fd_weights(s[i], sx, 5, 2, w);
        double r1 = 0.0, r2 = 0.0, t1 = 0.0, t2 = 0.0;
        for (int j = 0; j < 5; ++j) {
            const OrbitPoint& q = pts[i - 2 + j];
            r1 += w[j][1] * q.r;
            r2 += w[j][2] * q.r;
            t1 += w[j][1] * q.theta;
            t2 += w[j][2] * q.theta;
        }
        const double r = pts[i].r;
        const double alpha = std::atan2(r1, r * t1);
        // d(alpha)/ds for a unit-speed curve: r'' (r theta') - r' (r theta')'
        const double alpha_rate = r2 * (r * t1) - r1 * (r1 * t1 + r * t2);
        CurveState st{s[i], r, pts[i].theta, alpha};
        worst = std::max(worst, std::abs(curvature_gc(p, st, alpha_rate)));
    }
    return worst;
}

} // namespace isogeo
