#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "isogeo/errors.hpp"

namespace isogeo {

/**
 * A chart-based hypersurface X: U subset R^n -> R^{n+1}.
 *
 * position is mandatory; jacobian_fn / hessian_fn may supply analytic
 * derivatives, otherwise central differences with step fd_step are used.
 * hessian entries are indexed i*n+j, each a vector in R^{n+1}.
 * orientation (+-1) flips the unit normal.
 */
struct ParamSurface {
    int dim = 2;
    Eigen::VectorXd u_lo, u_hi;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> position;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian_fn;
    std::function<std::vector<Eigen::VectorXd>(const Eigen::VectorXd&)> hessian_fn;
    double orientation = 1.0;
    double fd_step = 1e-4;

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const;       // (n+1) x n
    std::vector<Eigen::VectorXd> hessian(const Eigen::VectorXd& u) const;

    ParamSurface with_orientation(double sign) const {
        ParamSurface s = *this;
        s.orientation = sign;
        return s;
    }
};

struct FundamentalForms {
    Eigen::MatrixXd metric;      // g_ij = <d_i X, d_j X>
    Eigen::MatrixXd second_form; // h_ij = -<d_i d_j X, nu>
    Eigen::VectorXd normal;      // unit normal per orientation
};

// First and second fundamental forms and the oriented unit normal. The sign
// convention h_ij = -<d_i d_j X, nu> makes the unit sphere with outward
// normal have principal curvatures +1.
FundamentalForms fundamental_forms(const ParamSurface& S, const Eigen::VectorXd& u);

struct CurvatureData {
    Eigen::MatrixXd metric;
    Eigen::MatrixXd second_form;
    Eigen::VectorXd normal;
    Eigen::VectorXd kappa;       // principal curvatures, ascending
    Eigen::VectorXd S;           // S[r] = r-th elementary symmetric polynomial, S[0] = 1
    Eigen::VectorXd H;           // H[r] = S[r] / binom(n, r)
    Eigen::MatrixXd shape_mixed; // g^{-1} h

    double mean_curvature() const { return H[1]; }
    double second_form_norm_sq() const { return kappa.squaredNorm(); } // |A|^2
};

// Principal curvatures via the metric-symmetrized eigenproblem and the
// elementary symmetric functions by direct expansion over the eigenvalues.
CurvatureData curvature_data(const ParamSurface& S, const Eigen::VectorXd& u);

// Newton transformation T^r in the orthonormal eigenframe (diagonal entries
// e_r of the complementary principal curvatures): T^0 = Id,
// T^r = S_r Id - T^{r-1} A.
Eigen::MatrixXd newton_transform(const ParamSurface& S, const Eigen::VectorXd& u, int r);

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

struct LrOptions {
    double field_step = 1e-2; // FD step for scalar-field derivatives
};

// L_r f = tr(T^r . hess f) with the covariant Hessian
// f_;ij = d_i d_j f - Gamma^k_ij d_k f. r = 0 is the Laplace-Beltrami
// operator. Field derivatives use 5-point stencils; Christoffel symbols come
// from the chart derivatives.
double l_r_apply(const ParamSurface& S, const ScalarField& f, const Eigen::VectorXd& u, int r,
                 const LrOptions& opts = {});

// Residual of the Minkowski-type identity L_{r-1}<X,a> - r S_r <nu,a>,
// evaluated in the graph-normal convention (second fundamental form w.r.t.
// -nu) in which the identity holds; approximately zero on smooth surfaces.
double minkowski_residual(const ParamSurface& S, const Eigen::VectorXd& u, int r,
                          const Eigen::VectorXd& a, const LrOptions& opts = {});

// True iff all principal curvatures share a strict sign.
bool is_elliptic_point(const ParamSurface& S, const Eigen::VectorXd& u);

// 5-point finite-difference gradient and Hessian of a scalar field on the
// chart (plain partial derivatives, no covariant correction).
struct FieldDerivatives {
    double value = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
};
FieldDerivatives field_derivatives(const ScalarField& f, const Eigen::VectorXd& u, double step);

double binomial(int n, int r);

} // namespace isogeo
