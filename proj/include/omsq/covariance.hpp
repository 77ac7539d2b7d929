#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "omsq/params.hpp"

namespace omsq {

/// Generator of the linearized quadrature dynamics, ordering (X, Y, Q, P).
struct DriftMatrix {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    bool time_dependent = false;
};

/// Diagonal diffusion from the vacuum/thermal baths.
struct NoiseMatrix {
    Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
};

/// Symmetric quadrature correlation matrix V with its timestamp.
struct CovarianceMatrix {
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    double t = 0.0;
};

using DriftProvider = std::function<DriftMatrix(double)>;

struct StabilityReport {
    std::array<double, 4> margins{};  ///< left-hand sides of the four inequalities
    bool stable = false;              ///< all margins strictly positive
};

struct LimitCycleStats {
    double v33_min = 0.0;
    double v33_max = 0.0;
    double v33_mean = 0.0;
    std::vector<CovarianceMatrix> cycle;  ///< one period of samples after the transient
};

/// Rotating-frame drift
///   [ -k/2   0     0    -G- ]
///   [  0    -k/2   G+    0  ]
///   [  0    -G-   -y/2  -Gt-]
///   [  G+    0     Gt+  -y/2]
/// Requires a real coupling set.
DriftMatrix drift_rwa(const CouplingSet& c, const SystemParams& p);

/// Lab-frame drift for instantaneous classical amplitudes alpha, beta:
///   [ -k/2      Delta    -8 g aI bR   0   ]
///   [ -Delta   -k/2       8 g aR bR   0   ]
///   [  0        0        -y/2         w_m ]
///   [  8g aR bR 8g aI bR -w_m+4g|a|^2 -y/2]
/// Requires the effective detuning to be set.
DriftMatrix drift_full(const SystemParams& p, Complex alpha, Complex beta);

/// Drift provider that follows the Floquet ansatz in time.
DriftProvider floquet_drift_provider(const SystemParams& p, const FloquetAmplitudes& f);

/// diag(k(n_a+1/2), k(n_a+1/2), y(n_b+1/2), y(n_b+1/2))
NoiseMatrix noise_matrix(const SystemParams& p);

/// RK4 trajectory of dV/dt = M V + V M^T + D; symmetry is re-enforced each
/// step by (V+V^T)/2. Records every `stride`-th step (plus the initial and
/// final states). Throws StepTooLarge when dt fails to resolve the fastest
/// drift entry with >= 50 steps per 2*pi/max|entry|, NonFiniteState when the
/// state diverges (instability signal).
std::vector<CovarianceMatrix> evolve_covariance(const DriftProvider& drift,
                                                const NoiseMatrix& d,
                                                const CovarianceMatrix& v0,
                                                double t_end, double dt,
                                                std::size_t stride = 1);

/// Unique solution of M V + V M^T + D = 0 via the 16x16 Kronecker-sum system.
/// The drift must be constant and Hurwitz-stable (UnstableDrift otherwise);
/// the residual is checked against 1e-10 * ||D||_F.
CovarianceMatrix steady_state_covariance(const DriftMatrix& m, const NoiseMatrix& d);

/// The four stability inequalities for the rotating-frame drift.
StabilityReport routh_hurwitz(const CouplingSet& c, const SystemParams& p);

/// Largest real part of the eigenvalues; the independent stability oracle.
double max_real_eigenvalue(const Eigen::Matrix4d& m);

/// Integrates through the transient, then records one full period. dt is
/// adjusted to divide the period exactly.
LimitCycleStats limit_cycle_stats(const DriftProvider& drift, const NoiseMatrix& d,
                                  const CovarianceMatrix& v0, double t_transient,
                                  double period, double dt);

} // namespace omsq
