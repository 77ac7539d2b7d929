#pragma once

#include <vector>

#include <Eigen/Dense>

#include "omsq/covariance.hpp"

namespace omsq {

/// Dense phase-space table of the Gaussian Wigner function.
struct WignerGrid {
    std::vector<double> q_axis;
    std::vector<double> p_axis;
    std::vector<double> values;  ///< row-major, values[iq * p_axis.size() + ip]

    double at(std::size_t iq, std::size_t ip) const { return values[iq * p_axis.size() + ip]; }
    /// Cell-sum approximation of the phase-space integral.
    double integral() const;
};

struct EntanglementResult {
    double e_n = 0.0;       ///< logarithmic negativity, max[0, -ln(2 nu_minus)]
    double nu_minus = 0.0;  ///< smallest symplectic eigenvalue of the PT state
    double sigma = 0.0;     ///< det A + det B - 2 det C
    double det_a = 0.0;
    double det_b = 0.0;
    double det_c = 0.0;
    double det_v = 0.0;
};

/// Rows/columns {3, 4} of the full covariance: the mechanical block.
Eigen::Matrix2d mechanical_block(const CovarianceMatrix& v);

/// W(q, p) = exp(-u^T V^{-1} u / 2) / (2 pi sqrt(det V)).
/// Throws SingularCovariance unless v_b is positive-definite.
double wigner_density(const Eigen::Matrix2d& v_b, double q, double p);

/// Uniform grid out to extent_sigmas standard deviations of the larger
/// principal variance (default 5 sigma, 201 x 201).
WignerGrid make_wigner_grid(const Eigen::Matrix2d& v_b, std::size_t nq = 201,
                            std::size_t np = 201, double extent_sigmas = 5.0);

/// Angle of the minor (squeezed) principal axis, in (-pi/2, pi/2].
/// Throws IsotropicState when the eigenvalues are degenerate.
double principal_axis_angle(const Eigen::Matrix2d& v_b);

/// 10 log10(0.5 / variance); positive values are below the standard quantum
/// limit. Throws NonPositiveVariance.
double squeezing_db(double variance);

/// Logarithmic negativity of the bipartite 2x2-block covariance.
/// Throws ComplexRoot when sigma^2 < 4 det V beyond tolerance (unphysical
/// input); tiny negative discriminants are clamped to zero.
EntanglementResult logarithmic_negativity(const CovarianceMatrix& v);

/// Diagnostic physicality check: smallest eigenvalue of the Hermitian matrix
/// V + (i/2) Omega_sympl. Non-negative for physical Gaussian states; never
/// enforced, only reported.
double min_physicality_eigenvalue(const CovarianceMatrix& v);

} // namespace omsq
