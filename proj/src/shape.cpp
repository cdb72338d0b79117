#include "isogeo/shape.hpp"

#include <array>
#include <cmath>

namespace isogeo {

namespace {

// 5-point central first/second derivative weights on a uniform stencil.
double fd1(const std::array<double, 5>& v, double h) {
    return (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
}
double fd2(const std::array<double, 5>& v, double h) {
    return (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
}

} // namespace

Eigen::MatrixXd ParamSurface::jacobian(const Eigen::VectorXd& u) const {
    if (jacobian_fn)
        return jacobian_fn(u);
    const int n = dim;
    Eigen::MatrixXd J(n + 1, n);
    Eigen::VectorXd up = u, um = u;
    for (int i = 0; i < n; ++i) {
        up[i] = u[i] + fd_step;
        um[i] = u[i] - fd_step;
        J.col(i) = (position(up) - position(um)) / (2.0 * fd_step);
        up[i] = u[i];
        um[i] = u[i];
    }
    return J;
}

std::vector<Eigen::VectorXd> ParamSurface::hessian(const Eigen::VectorXd& u) const {
    if (hessian_fn)
        return hessian_fn(u);
    const int n = dim;
    const double h = fd_step;
    std::vector<Eigen::VectorXd> H(static_cast<std::size_t>(n) * n);
    const Eigen::VectorXd x0 = position(u);
    Eigen::VectorXd v = u;
    for (int i = 0; i < n; ++i) {
        v[i] = u[i] + h;
        const Eigen::VectorXd xp = position(v);
        v[i] = u[i] - h;
        const Eigen::VectorXd xm = position(v);
        v[i] = u[i];
        H[i * n + i] = (xp - 2.0 * x0 + xm) / (h * h);
        for (int j = i + 1; j < n; ++j) {
            v[i] = u[i] + h;
            v[j] = u[j] + h;
            const Eigen::VectorXd xpp = position(v);
            v[j] = u[j] - h;
            const Eigen::VectorXd xpm = position(v);
            v[i] = u[i] - h;
            const Eigen::VectorXd xmm = position(v);
            v[j] = u[j] + h;
            const Eigen::VectorXd xmp = position(v);
            v[i] = u[i];
            v[j] = u[j];
            H[i * n + j] = (xpp - xpm - xmp + xmm) / (4.0 * h * h);
            H[j * n + i] = H[i * n + j];
        }
    }
    return H;
}

FundamentalForms fundamental_forms(const ParamSurface& S, const Eigen::VectorXd& u) {
    const int n = S.dim;
    const Eigen::MatrixXd J = S.jacobian(u);
    FundamentalForms out;
    out.metric = J.transpose() * J;

    // Generalized cross product of the chart tangents: component k carries
    // the signed k-th row-deleted minor of the Jacobian.
    Eigen::VectorXd normal(n + 1);
    Eigen::MatrixXd minor(n, n);
    for (int k = 0; k <= n; ++k) {
        int rr = 0;
        for (int row = 0; row <= n; ++row) {
            if (row == k)
                continue;
            minor.row(rr++) = J.row(row);
        }
        normal[k] = (k % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
    }
    const double scale = normal.norm();
    double colscale = 1.0;
    for (int i = 0; i < n; ++i)
        colscale *= J.col(i).norm();
    if (!(scale > 1e-12 * std::max(colscale, 1e-300)))
        throw DegenerateMetric("fundamental_forms: chart is degenerate at this point");
    out.normal = S.orientation * normal / scale;

    const std::vector<Eigen::VectorXd> H = S.hessian(u);
    out.second_form.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.second_form(i, j) = -H[i * n + j].dot(out.normal);
    return out;
}

double binomial(int n, int r) {
    if (r < 0 || r > n)
        return 0.0;
    double v = 1.0;
    for (int i = 0; i < r; ++i)
        v = v * (n - i) / (i + 1);
    return v;
}

CurvatureData curvature_data(const ParamSurface& S, const Eigen::VectorXd& u) {
    const int n = S.dim;
    const FundamentalForms ff = fundamental_forms(S, u);
    CurvatureData cd;
    cd.metric = ff.metric;
    cd.second_form = ff.second_form;
    cd.normal = ff.normal;

    const Eigen::LLT<Eigen::MatrixXd> llt(ff.metric);
    if (llt.info() != Eigen::Success)
        throw DegenerateMetric("curvature_data: metric not positive definite");
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd B = L.triangularView<Eigen::Lower>().solve(
        L.triangularView<Eigen::Lower>()
            .solve(ff.second_form)
            .transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (B + B.transpose()));
    if (eig.info() != Eigen::Success)
        throw DegenerateMetric("curvature_data: eigensolver failed");
    cd.kappa = eig.eigenvalues();
    cd.shape_mixed = llt.solve(ff.second_form);

    // e_r by the incremental product recursion.
    cd.S = Eigen::VectorXd::Zero(n + 1);
    cd.S[0] = 1.0;
    for (int k = 0; k < n; ++k)
        for (int r = std::min(k + 1, n); r >= 1; --r)
            cd.S[r] += cd.kappa[k] * cd.S[r - 1];

    cd.H = Eigen::VectorXd::Zero(n + 1);
    cd.H[0] = 1.0;
    for (int r = 1; r <= n; ++r)
        cd.H[r] = cd.S[r] / binomial(n, r);
    return cd;
}

Eigen::MatrixXd newton_transform(const ParamSurface& S, const Eigen::VectorXd& u, int r) {
    const int n = S.dim;
    if (r < 0 || r > n)
        throw IndexError("newton_transform: r must lie in [0, n]");
    const CurvatureData cd = curvature_data(S, u);
    Eigen::VectorXd t = Eigen::VectorXd::Ones(n);
    for (int k = 1; k <= r; ++k)
        t = (cd.S[k] - t.array() * cd.kappa.array()).matrix();
    return t.asDiagonal();
}

FieldDerivatives field_derivatives(const ScalarField& f, const Eigen::VectorXd& u, double step) {
    const int n = static_cast<int>(u.size());
    FieldDerivatives out;
    out.value = f(u);
    out.gradient.resize(n);
    out.hessian.resize(n, n);
    Eigen::VectorXd v = u;
    for (int i = 0; i < n; ++i) {
        std::array<double, 5> vals;
        for (int k = 0; k < 5; ++k) {
            v[i] = u[i] + (k - 2) * step;
            vals[k] = (k == 2) ? out.value : f(v);
        }
        v[i] = u[i];
        out.gradient[i] = fd1(vals, step);
        out.hessian(i, i) = fd2(vals, step);
    }
    // Mixed partials: 5-point first-derivative stencil applied twice.
    static constexpr double W[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double acc = 0.0;
            for (int a = -2; a <= 2; ++a) {
                if (a == 0)
                    continue;
                for (int b = -2; b <= 2; ++b) {
                    if (b == 0)
                        continue;
                    v[i] = u[i] + a * step;
                    v[j] = u[j] + b * step;
                    acc += W[a + 2] * W[b + 2] * f(v);
                }
            }
            v[i] = u[i];
            v[j] = u[j];
            out.hessian(i, j) = acc / (step * step);
            out.hessian(j, i) = out.hessian(i, j);
        }
    return out;
}

namespace {

// Christoffel symbols of the chart metric from the first and second chart
// derivatives: Gamma^k_ij = g^{kl} <d_i d_j X, d_l X>.
std::vector<Eigen::MatrixXd> christoffel(const ParamSurface& S, const Eigen::VectorXd& u) {
    const int n = S.dim;
    const Eigen::MatrixXd J = S.jacobian(u);
    const std::vector<Eigen::VectorXd> H = S.hessian(u);
    const Eigen::MatrixXd g = J.transpose() * J;
    const Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
        throw DegenerateMetric("christoffel: metric not positive definite");
    std::vector<Eigen::MatrixXd> Gamma(n, Eigen::MatrixXd(n, n));
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l)
                rhs[l] = H[i * n + j].dot(J.col(l));
            const Eigen::VectorXd gk = llt.solve(rhs);
            for (int k = 0; k < n; ++k)
                Gamma[k](i, j) = gk[k];
        }
    return Gamma;
}

} // namespace

double l_r_apply(const ParamSurface& S, const ScalarField& f, const Eigen::VectorXd& u, int r,
                 const LrOptions& opts) {
    const int n = S.dim;
    if (r < 0 || r > n)
        throw IndexError("l_r_apply: r must lie in [0, n]");
    const CurvatureData cd = curvature_data(S, u);
    const std::vector<Eigen::MatrixXd> Gamma = christoffel(S, u);
    const FieldDerivatives fd = field_derivatives(f, u, opts.field_step);

    Eigen::MatrixXd hess_cov = fd.hessian;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                hess_cov(i, j) -= Gamma[k](i, j) * fd.gradient[k];

    Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= r; ++k)
        T = cd.S[k] * Eigen::MatrixXd::Identity(n, n) - T * cd.shape_mixed;

    const Eigen::LLT<Eigen::MatrixXd> llt(cd.metric);
    return (T * llt.solve(hess_cov)).trace();
}

double minkowski_residual(const ParamSurface& S, const Eigen::VectorXd& u, int r,
                          const Eigen::VectorXd& a, const LrOptions& opts) {
    const int n = S.dim;
    if (r < 1 || r > n)
        throw IndexError("minkowski_residual: r must lie in [1, n]");
    if (a.size() != n + 1)
        throw DimensionMismatch("minkowski_residual: direction must live in R^{n+1}");
    const Eigen::VectorXd nu = fundamental_forms(S, u).normal;
    // The identity is stated for the second fundamental form taken w.r.t.
    // the opposite normal; evaluate all curvature terms in that convention
    // while pairing with the surface's own normal.
    const ParamSurface Sf = S.with_orientation(-S.orientation);
    const ScalarField support = [&](const Eigen::VectorXd& v) { return S.position(v).dot(a); };
    const double lhs = l_r_apply(Sf, support, u, r - 1, opts);
    const double Sr = curvature_data(Sf, u).S[r];
    return lhs - r * Sr * nu.dot(a);
}

bool is_elliptic_point(const ParamSurface& S, const Eigen::VectorXd& u) {
    const CurvatureData cd = curvature_data(S, u);
    return cd.kappa.minCoeff() * cd.kappa.maxCoeff() > 0.0;
}

} // namespace isogeo
