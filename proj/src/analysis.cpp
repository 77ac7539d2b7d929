#include "omsq/analysis.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace omsq {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_definite(const Eigen::Matrix2d& v, const char* who) {
    if (!(v(0, 0) > 0.0) || !(v.determinant() > 0.0))
        throw SingularCovariance(std::string(who) + ": covariance block not positive-definite");
}

} // namespace

double WignerGrid::integral() const {
    if (q_axis.size() < 2 || p_axis.size() < 2)
        return 0.0;
    const double dq = q_axis[1] - q_axis[0];
    const double dp = p_axis[1] - p_axis[0];
    double sum = 0.0;
    for (const double w : values)
        sum += w;
    return sum * dq * dp;
}

Eigen::Matrix2d mechanical_block(const CovarianceMatrix& v) {
    return v.v.block<2, 2>(2, 2);
}

double wigner_density(const Eigen::Matrix2d& v_b, double q, double p) {
    require_positive_definite(v_b, "wigner_density");
    const double det = v_b.determinant();
    const Eigen::Vector2d u(q, p);
    const double quad = u.dot(v_b.inverse() * u);
    return std::exp(-0.5 * quad) / (2.0 * kPi * std::sqrt(det));
}

WignerGrid make_wigner_grid(const Eigen::Matrix2d& v_b, std::size_t nq, std::size_t np,
                            double extent_sigmas) {
    require_positive_definite(v_b, "make_wigner_grid");
    if (nq < 2 || np < 2)
        throw std::invalid_argument("wigner grid needs at least 2x2 points");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(v_b);
    const double sigma = std::sqrt(es.eigenvalues().maxCoeff());
    const double ext = extent_sigmas * sigma;

    WignerGrid grid;
    grid.q_axis.resize(nq);
    grid.p_axis.resize(np);
    for (std::size_t i = 0; i < nq; ++i)
        grid.q_axis[i] = -ext + 2.0 * ext * static_cast<double>(i) / static_cast<double>(nq - 1);
    for (std::size_t j = 0; j < np; ++j)
        grid.p_axis[j] = -ext + 2.0 * ext * static_cast<double>(j) / static_cast<double>(np - 1);

    const Eigen::Matrix2d vinv = v_b.inverse();
    const double norm = 1.0 / (2.0 * kPi * std::sqrt(v_b.determinant()));
    grid.values.resize(nq * np);
    for (std::size_t i = 0; i < nq; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            const Eigen::Vector2d u(grid.q_axis[i], grid.p_axis[j]);
            grid.values[i * np + j] = norm * std::exp(-0.5 * u.dot(vinv * u));
        }
    return grid;
}

double principal_axis_angle(const Eigen::Matrix2d& v_b) {
    require_positive_definite(v_b, "principal_axis_angle");
    const double a = v_b(0, 0), b = v_b(1, 1), c = v_b(0, 1);
    const double mean = 0.5 * (a + b);
    const double radius = std::hypot(0.5 * (a - b), c);
    const double lmax = mean + radius, lmin = mean - radius;
    if (lmax - lmin <= 1e-12 * std::max(lmax, 1.0))
        throw IsotropicState("principal axes are undefined for an isotropic state");

    // major-axis angle, then rotate a quarter turn to the squeezed axis
    double theta = 0.5 * std::atan2(2.0 * c, a - b) + 0.5 * kPi;
    while (theta > 0.5 * kPi)
        theta -= kPi;
    while (theta <= -0.5 * kPi)
        theta += kPi;
    return theta;
}

double squeezing_db(double variance) {
    if (!(variance > 0.0))
        throw NonPositiveVariance("squeezing_db needs a positive variance");
    return 10.0 * std::log10(0.5 / variance);
}

EntanglementResult logarithmic_negativity(const CovarianceMatrix& v) {
    const Eigen::Matrix2d a = v.v.block<2, 2>(0, 0);
    const Eigen::Matrix2d b = v.v.block<2, 2>(2, 2);
    const Eigen::Matrix2d c = v.v.block<2, 2>(0, 2);

    EntanglementResult res;
    res.det_a = a.determinant();
    res.det_b = b.determinant();
    res.det_c = c.determinant();
    res.det_v = v.v.determinant();
    res.sigma = res.det_a + res.det_b - 2.0 * res.det_c;

    double disc = res.sigma * res.sigma - 4.0 * res.det_v;
    if (disc < -1e-12)
        throw ComplexRoot("sigma^2 < 4 det V: input covariance is unphysical");
    disc = std::max(disc, 0.0);

    double inner = res.sigma - std::sqrt(disc);
    if (inner < -1e-12)
        throw ComplexRoot("negative symplectic eigenvalue candidate: input unphysical");
    inner = std::max(inner, 0.0);

    res.nu_minus = std::sqrt(inner) / std::numbers::sqrt2;
    if (res.nu_minus <= 0.0)
        throw ComplexRoot("vanishing nu_minus: input covariance is unphysical");
    res.e_n = std::max(0.0, -std::log(2.0 * res.nu_minus));
    return res;
}

double min_physicality_eigenvalue(const CovarianceMatrix& v) {
    Eigen::Matrix4cd h = v.v.cast<std::complex<double>>();
    // symplectic form for the (X, Y, Q, P) ordering
    const std::complex<double> ihalf(0.0, 0.5);
    h(0, 1) += ihalf;
    h(1, 0) -= ihalf;
    h(2, 3) += ihalf;
    h(3, 2) -= ihalf;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    return es.eigenvalues().minCoeff();
}

} // namespace omsq
