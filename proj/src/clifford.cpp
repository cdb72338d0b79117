#include "isogeo/clifford.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "isogeo/rng.hpp"

namespace isogeo {

std::int64_t delta(int m) {
    if (m < 1)
        throw DomainError("delta(m) needs m >= 1");
    static constexpr std::int64_t table[8] = {1, 2, 4, 4, 8, 8, 8, 8};
    std::int64_t factor = 1;
    while (m > 8) {
        m -= 8;
        factor *= 16;
    }
    return factor * table[m - 1];
}

namespace {

struct SignedUnit {
    int sign;
    int idx;
};

// Product of basis units e_a * e_b in the Cayley-Dickson algebra of
// dimension d (1, 2, 4, 8): (x1,x2)(y1,y2) = (x1 y1 - conj(y2) x2,
// y2 x1 + x2 conj(y1)), conj(e_k) = e_k for k = 0 and -e_k otherwise.
SignedUnit cd_mul(int d, int a, int b) {
    if (d == 1)
        return {1, 0};
    const int h = d / 2;
    if (a < h && b < h)
        return cd_mul(h, a, b);
    if (a < h) {
        const SignedUnit r = cd_mul(h, b - h, a);
        return {r.sign, r.idx + h};
    }
    if (b < h) {
        const SignedUnit r = cd_mul(h, a - h, b);
        const int conj_sign = (b == 0) ? 1 : -1;
        return {r.sign * conj_sign, r.idx + h};
    }
    const SignedUnit r = cd_mul(h, b - h, a - h);
    const int conj_sign = (b - h == 0) ? 1 : -1;
    return {-r.sign * conj_sign, r.idx};
}

// Left multiplication by the imaginary unit e_a as a signed permutation.
Eigen::MatrixXi cd_left_mult(int d, int a) {
    Eigen::MatrixXi L = Eigen::MatrixXi::Zero(d, d);
    for (int b = 0; b < d; ++b) {
        const SignedUnit r = cd_mul(d, a, b);
        L(r.idx, b) = r.sign;
    }
    return L;
}

// q pairwise anticommuting skew matrices squaring to -Id, on the minimal
// module (dimension delta(q+1)), with entries in {-1, 0, 1}.
std::vector<Eigen::MatrixXi> clifford_generators(int q) {
    std::vector<Eigen::MatrixXi> gens;
    if (q == 0)
        return gens;
    if (q <= 7) {
        const int d = q <= 1 ? 2 : (q <= 3 ? 4 : 8);
        for (int a = 1; a <= q; ++a)
            gens.push_back(cd_left_mult(d, a));
        return gens;
    }
    if (q == 8) {
        // Matrix doubling of the octonion generators.
        std::vector<Eigen::MatrixXi> oct = clifford_generators(7);
        const int d = 8;
        for (const auto& O : oct) {
            Eigen::MatrixXi B = Eigen::MatrixXi::Zero(2 * d, 2 * d);
            B.topRightCorner(d, d) = O;
            B.bottomLeftCorner(d, d) = O;
            gens.push_back(B);
        }
        Eigen::MatrixXi J = Eigen::MatrixXi::Zero(2 * d, 2 * d);
        J.topRightCorner(d, d) = -Eigen::MatrixXi::Identity(d, d);
        J.bottomLeftCorner(d, d) = Eigen::MatrixXi::Identity(d, d);
        gens.push_back(J);
        return gens;
    }
    // Periodicity: generators of rank q from rank q-8 tensored against the
    // rank-8 block and its volume element.
    const std::vector<Eigen::MatrixXi> low = clifford_generators(q - 8);
    const std::vector<Eigen::MatrixXi> O8 = clifford_generators(8);
    Eigen::MatrixXi omega = Eigen::MatrixXi::Identity(16, 16);
    for (const auto& O : O8)
        omega = (omega * O).eval();
    const std::int64_t dlow = low.empty() ? delta(q - 7) : low[0].rows();
    const Eigen::MatrixXi I_low =
        Eigen::MatrixXi::Identity(static_cast<int>(dlow), static_cast<int>(dlow));
    for (const auto& A : low)
        gens.push_back(Eigen::kroneckerProduct(A, omega).eval());
    for (const auto& O : O8)
        gens.push_back(Eigen::kroneckerProduct(I_low, O).eval());
    return gens;
}

Eigen::MatrixXi block_diag_copies(const Eigen::MatrixXi& A, int k) {
    const int d = static_cast<int>(A.rows());
    Eigen::MatrixXi B = Eigen::MatrixXi::Zero(d * k, d * k);
    for (int c = 0; c < k; ++c)
        B.block(c * d, c * d, d, d) = A;
    return B;
}

Eigen::VectorXd random_vector(Rng& rng, std::int64_t dim) {
    Eigen::VectorXd x(dim);
    for (std::int64_t i = 0; i < dim; ++i)
        x[i] = rng.gaussian();
    return x;
}

} // namespace

CliffordSystem build_clifford_system(int m, int k) {
    if (m < 1 || k < 1)
        throw DomainError("build_clifford_system needs m >= 1 and k >= 1");
    const std::int64_t l = static_cast<std::int64_t>(k) * delta(m);
    if (2 * l > 4096)
        throw DomainError("Clifford system dimension 2l = " + std::to_string(2 * l) +
                          " too large");
    const int li = static_cast<int>(l);

    CliffordSystem sys;
    sys.m = m;
    sys.k = k;
    sys.l = l;

    const Eigen::MatrixXi I = Eigen::MatrixXi::Identity(li, li);
    Eigen::MatrixXi P0 = Eigen::MatrixXi::Zero(2 * li, 2 * li);
    P0.topLeftCorner(li, li) = I;
    P0.bottomRightCorner(li, li) = -I;
    Eigen::MatrixXi P1 = Eigen::MatrixXi::Zero(2 * li, 2 * li);
    P1.topRightCorner(li, li) = I;
    P1.bottomLeftCorner(li, li) = I;
    sys.P.push_back(std::move(P0));
    sys.P.push_back(std::move(P1));

    const std::vector<Eigen::MatrixXi> gens = clifford_generators(m - 1);
    for (const auto& g : gens) {
        const Eigen::MatrixXi E = block_diag_copies(g, k);
        Eigen::MatrixXi Pi = Eigen::MatrixXi::Zero(2 * li, 2 * li);
        Pi.topRightCorner(li, li) = E;
        Pi.bottomLeftCorner(li, li) = -E;
        sys.P.push_back(std::move(Pi));
    }

    sys.Pd.reserve(sys.P.size());
    for (const auto& P : sys.P)
        sys.Pd.push_back(P.cast<double>());

    if (2 * l <= 256 && !verify_clifford(sys).all_pass())
        throw Error("internal error: constructed Clifford system fails its relations");
    return sys;
}

AuditReport verify_clifford(const CliffordSystem& sys) {
    AuditReport rep;
    const auto n = static_cast<int>(sys.P.size());
    const std::int64_t d = sys.P.empty() ? 0 : sys.P[0].rows();
    const Eigen::MatrixXi I = Eigen::MatrixXi::Identity(d, d);
    auto max_abs = [](const Eigen::MatrixXi& M) {
        return static_cast<double>(M.cwiseAbs().maxCoeff());
    };
    for (int a = 0; a < n; ++a) {
        const Eigen::MatrixXi& P = sys.P[a];
        rep.entries.push_back(AuditReport::make_entry(
            "symmetric(P" + std::to_string(a) + ")", {max_abs(P - P.transpose())}, 0.0));
        rep.entries.push_back(AuditReport::make_entry("involution(P" + std::to_string(a) + ")",
                                                      {max_abs(P * P - I)}, 0.0));
        rep.entries.push_back(AuditReport::make_entry(
            "traceless(P" + std::to_string(a) + ")", {static_cast<double>(std::abs(P.trace()))},
            0.0));
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            rep.entries.push_back(AuditReport::make_entry(
                "anticommute(P" + std::to_string(a) + ",P" + std::to_string(b) + ")",
                {max_abs(sys.P[a] * sys.P[b] + sys.P[b] * sys.P[a])}, 0.0));
    return rep;
}

double cm_eval(const CliffordSystem& sys, const Eigen::VectorXd& x) {
    if (x.size() != sys.dim())
        throw DimensionMismatch("cm_eval: vector dimension " + std::to_string(x.size()) +
                                " != " + std::to_string(sys.dim()));
    const double n2 = x.squaredNorm();
    double sum = 0.0;
    for (const auto& P : sys.Pd) {
        const double q = x.dot(P * x);
        sum += q * q;
    }
    return n2 * n2 - 2.0 * sum;
}

Eigen::VectorXd cm_gradient(const CliffordSystem& sys, const Eigen::VectorXd& x) {
    if (x.size() != sys.dim())
        throw DimensionMismatch("cm_gradient: dimension mismatch");
    Eigen::VectorXd g = 4.0 * x.squaredNorm() * x;
    for (const auto& P : sys.Pd) {
        const Eigen::VectorXd Px = P * x;
        g -= 8.0 * x.dot(Px) * Px;
    }
    return g;
}

double cm_laplacian(const CliffordSystem& sys, const Eigen::VectorXd& x) {
    if (x.size() != sys.dim())
        throw DimensionMismatch("cm_laplacian: dimension mismatch");
    const double m1 = static_cast<double>(sys.m);
    return (4.0 * (2.0 * sys.l + 2.0) - 16.0 * (m1 + 1.0)) * x.squaredNorm();
}

AuditReport verify_cartan_munzner(const CliffordSystem& sys, int n_samples, double tol,
                                  std::uint64_t seed) {
    if (sys.l - sys.m - 1 < 1)
        throw InvalidMultiplicity("need l - m - 1 >= 1, got l = " + std::to_string(sys.l) +
                                  ", m = " + std::to_string(sys.m));
    Rng rng(seed);
    std::vector<double> grad_res, lap_res;
    const double target_lap = 8.0 * static_cast<double>(sys.l - 2 * sys.m - 1);
    for (int i = 0; i < n_samples; ++i) {
        const Eigen::VectorXd x = random_vector(rng, sys.dim());
        const double n2 = x.squaredNorm();
        const double n6 = n2 * n2 * n2;
        grad_res.push_back((cm_gradient(sys, x).squaredNorm() - 16.0 * n6) / n6);
        lap_res.push_back((cm_laplacian(sys, x) - target_lap * n2) / n2);
    }
    AuditReport rep;
    rep.seed = seed;
    rep.entries.push_back(AuditReport::make_entry("gradient_equation", grad_res, tol));
    rep.entries.push_back(AuditReport::make_entry("laplacian_equation", lap_res, tol));
    return rep;
}

std::vector<SpinGenerator> spin_generators(const CliffordSystem& sys) {
    std::vector<SpinGenerator> gens;
    const int n = static_cast<int>(sys.Pd.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            gens.push_back(SpinGenerator{a, b, sys.Pd[a] * sys.Pd[b]});
    return gens;
}

Eigen::VectorXd spin_orbit_map(const SpinGenerator& gen, double t, const Eigen::VectorXd& x) {
    if (x.size() != gen.A.rows())
        throw DimensionMismatch("spin_orbit_map: dimension mismatch");
    return std::cos(t) * x + std::sin(t) * (gen.A * x);
}

AuditReport verify_spin_invariance(const CliffordSystem& sys, int n_samples, int t_samples,
                                   double tol, std::uint64_t seed) {
    AuditReport rep;
    rep.seed = seed;
    Rng rng(seed);
    const std::vector<SpinGenerator> gens = spin_generators(sys);
    if (gens.empty()) {
        rep.entries.push_back(AuditReport::make_entry("spin_invariance(vacuous)", {}, tol));
        return rep;
    }
    for (const auto& gen : gens) {
        std::vector<double> res;
        for (int i = 0; i < n_samples; ++i) {
            const Eigen::VectorXd x = random_vector(rng, sys.dim());
            const double f0 = cm_eval(sys, x);
            const double n2 = x.squaredNorm();
            const double scale = std::max(1.0, n2 * n2);
            for (int j = 0; j < t_samples; ++j) {
                const double t = 2.0 * std::numbers::pi * (j + 1) / (t_samples + 1);
                res.push_back((cm_eval(sys, spin_orbit_map(gen, t, x)) - f0) / scale);
            }
        }
        rep.entries.push_back(AuditReport::make_entry(
            "spin_invariance(P" + std::to_string(gen.alpha) + "P" + std::to_string(gen.beta) +
                ")",
            res, tol));
    }
    return rep;
}

S1V2Point s1_v2_action(std::int64_t l, double t, double phi, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y) {
    if (x.size() != l || y.size() != l)
        throw DimensionMismatch("s1_v2_action: vectors must have dimension l");
    if (std::abs(x.norm() - 1.0) > 1e-10 || std::abs(y.norm() - 1.0) > 1e-10 ||
        std::abs(x.dot(y)) > 1e-10)
        throw NotInStiefel("s1_v2_action: (x, y) must be orthonormal");
    S1V2Point out;
    out.phi = phi - 2.0 * t;
    out.x = std::cos(t) * x + std::sin(t) * y;
    out.y = -std::sin(t) * x + std::cos(t) * y;
    return out;
}

Eigen::VectorXd s1_v2_embed(double phi, double beta, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y) {
    if (x.size() != y.size())
        throw DimensionMismatch("s1_v2_embed: x and y must have equal dimension");
    const std::int64_t l = x.size();
    Eigen::VectorXd w(2 * l);
    w.head(l) = std::cos(phi) * std::cos(beta) * x - std::sin(phi) * std::sin(beta) * y;
    w.tail(l) = std::sin(phi) * std::cos(beta) * x + std::cos(phi) * std::sin(beta) * y;
    return w;
}

} // namespace isogeo
