#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "isogeo/audit.hpp"
#include "isogeo/errors.hpp"

namespace isogeo {

// Dimension of the irreducible module of the Clifford algebra C_{m-1}:
// delta(1..8) = (1, 2, 4, 4, 8, 8, 8, 8), delta(m+8) = 16 * delta(m).
std::int64_t delta(int m);

/**
 * A symmetric Clifford system {P_0, ..., P_m} on R^{2l}: symmetric orthogonal
 * integer matrices that square to the identity and pairwise anticommute
 * (P_a P_b + P_b P_a = 2 delta_ab Id). All entries lie in {-1, 0, 1}, so the
 * defining relations can be checked in exact integer arithmetic.
 *
 * The degree-4 polynomial F(x) = |x|^4 - 2 sum_a <P_a x, x>^2 restricted to
 * the unit sphere has the isoparametric family with multiplicities
 * (m, l-m-1) as its level sets.
 */
struct CliffordSystem {
    int m = 0;
    int k = 0;
    std::int64_t l = 0;                // l = k * delta(m); matrices are 2l x 2l
    std::vector<Eigen::MatrixXi> P;    // exact integer form
    std::vector<Eigen::MatrixXd> Pd;   // cached double form

    std::int64_t dim() const { return 2 * l; }
};

// Builds the standard system: P_0 = diag(Id, -Id), P_1 = antidiag(Id, Id),
// P_{1+i} = [[0, E_i], [-E_i, 0]] with E_1..E_{m-1} a recursively constructed
// skew representation of E_i E_j + E_j E_i = -2 delta_ij Id on R^l
// (complex/quaternion/octonion structures as signed permutations, matrix
// doubling, and 16-fold periodicity).
CliffordSystem build_clifford_system(int m, int k);

// Exact integer checks of symmetry, involutivity, pairwise anticommutation
// and tracelessness; any violation is reported with the offending indices.
AuditReport verify_clifford(const CliffordSystem& sys);

// F(x) = |x|^4 - 2 sum_a <P_a x, x>^2.
double cm_eval(const CliffordSystem& sys, const Eigen::VectorXd& x);

// grad F = 4|x|^2 x - 8 sum_a <P_a x, x> P_a x.
Eigen::VectorXd cm_gradient(const CliffordSystem& sys, const Eigen::VectorXd& x);

// Laplacian of F: (4(2l+2) - 16(m+1)) |x|^2 = 8(l - 2m - 1)|x|^2.
double cm_laplacian(const CliffordSystem& sys, const Eigen::VectorXd& x);

// Checks |grad F|^2 = 16 |x|^6 and Lap F = 8(l-2m-1)|x|^2 at random points,
// residuals relative to |x|^6 and |x|^2. Requires l - m - 1 >= 1.
AuditReport verify_cartan_munzner(const CliffordSystem& sys, int n_samples, double tol,
                                  std::uint64_t seed = 2024);

// One-parameter rotation generators of the invariance group.
struct SpinGenerator {
    int alpha = 0;
    int beta = 0;
    Eigen::MatrixXd A; // P_alpha * P_beta, skew with A^2 = -Id
};

std::vector<SpinGenerator> spin_generators(const CliffordSystem& sys);

// exp(tA) x = cos(t) x + sin(t) A x (valid since A^2 = -Id).
Eigen::VectorXd spin_orbit_map(const SpinGenerator& gen, double t, const Eigen::VectorXd& x);

// |F(exp(tA)x) - F(x)| < tol * max(1, |x|^4) over all generators, sampled t,
// random x.
AuditReport verify_spin_invariance(const CliffordSystem& sys, int n_samples, int t_samples,
                                   double tol, std::uint64_t seed = 2024);

// The circle-times-Stiefel action on (phi, x, y) with x, y orthonormal in
// R^l: t sends (phi, x, y) to (phi - 2t, cos t x + sin t y, -sin t x + cos t y).
struct S1V2Point {
    double phi = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
};

S1V2Point s1_v2_action(std::int64_t l, double t, double phi, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y);

// Embeds (phi, beta, x, y) into R^{2l} on a fixed level of the m = 1
// polynomial: u = cos(phi)cos(beta) x - sin(phi)sin(beta) y,
//             v = sin(phi)cos(beta) x + cos(phi)sin(beta) y.
Eigen::VectorXd s1_v2_embed(double phi, double beta, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y);

} // namespace isogeo
