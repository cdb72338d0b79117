#include "isogeo/foliation.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace isogeo {

double FoliationParams::wedge_angle() const { return std::numbers::pi / g; }

FoliationParams validate_params(int g, int m1, int m2, bool allow_degenerate_g1) {
    if (g != 1 && g != 2 && g != 3 && g != 4 && g != 6)
        throw InvalidG("g must be one of {1, 2, 3, 4, 6}, got " + std::to_string(g));
    if (m1 < 1)
        throw DomainError("m1 must be >= 1, got " + std::to_string(m1));
    const bool degenerate_g1 = (g == 1 && m2 == 0);
    if (m2 < 1 && !(degenerate_g1 && allow_degenerate_g1))
        throw DomainError("m2 must be >= 1 (m2 = 0 needs g = 1 and the explicit opt-in)");
    if (g % 2 == 1 && m1 != m2 && !(degenerate_g1 && allow_degenerate_g1))
        throw OddGMismatch("odd g requires m1 == m2, got m1 = " + std::to_string(m1) +
                           ", m2 = " + std::to_string(m2));

    const int twice_half_dim = g * (m1 + m2);
    if (twice_half_dim % 2 != 0)
        throw NonIntegerDimension("g*(m1+m2)/2 is not an integer for g = " + std::to_string(g) +
                                  ", m1 = " + std::to_string(m1) + ", m2 = " + std::to_string(m2));
    const int half_dim = twice_half_dim / 2;
    if (half_dim < 1)
        throw NonIntegerDimension("leaf dimension g*(m1+m2)/2 must be positive");

    FoliationParams p;
    p.g = g;
    p.m1 = m1;
    p.m2 = m2;
    p.n = half_dim + 1;
    p.ambient_dim = p.n + 1;
    return p;
}

namespace {

void require_inside_wedge(const FoliationParams& p, double theta) {
    if (!(theta > 0.0) || !(theta < p.wedge_angle()))
        throw DomainError("theta = " + std::to_string(theta) +
                          " outside the open interval (0, pi/g)");
}

} // namespace

double leaf_volume_profile(const FoliationParams& p, double theta) {
    require_inside_wedge(p, theta);
    const double x = 0.5 * p.g * theta;
    return std::pow(std::sin(x), p.m1) * std::pow(std::cos(x), p.m2);
}

double spherical_mean_curvature(const FoliationParams& p, double theta) {
    require_inside_wedge(p, theta);
    const double x = 0.5 * p.g * theta;
    return 0.5 * p.g * (p.m1 / std::tan(x) - p.m2 * std::tan(x));
}

double minimal_cone_angle(const FoliationParams& p) {
    if (p.m2 < 1)
        throw DomainError("minimal cone angle needs m2 >= 1");
    return (2.0 / p.g) * std::atan(std::sqrt(static_cast<double>(p.m1) / p.m2));
}

std::vector<FoliationParams> admissible_params(int max_half_dim) {
    std::vector<FoliationParams> out;
    for (int g : {1, 2, 3, 4, 6}) {
        for (int m1 = 1; g * (m1 + 1) <= 2 * max_half_dim; ++m1) {
            for (int m2 = 1; g * (m1 + m2) <= 2 * max_half_dim; ++m2) {
                if (g % 2 == 1 && m1 != m2)
                    continue;
                if ((g * (m1 + m2)) % 2 != 0)
                    continue;
                out.push_back(validate_params(g, m1, m2));
            }
        }
    }
    return out;
}

} // namespace isogeo
