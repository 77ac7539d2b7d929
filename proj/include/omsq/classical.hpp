#pragma once

#include <utility>
#include <vector>

#include "omsq/params.hpp"

namespace omsq {

/// Three-sideband amplitude modulation of the driving laser,
///   eps_l(t) = eps_m1 e^{+i Omega t} + eps_0 + eps_1 e^{-i Omega t}.
/// Higher harmonics are not supported.
struct DriveModulation {
    Complex eps_m1{0.4, 0.0};
    Complex eps_0{1.0, 0.0};
    Complex eps_1{0.4, 0.0};
    double omega = 2.0;
};

struct MeanFieldTrajectory {
    std::vector<double> times;
    std::vector<Complex> alpha;
    std::vector<Complex> beta;

    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

struct PeriodicityReport {
    double max_dev_alpha = 0.0;  ///< max |alpha(t+tau) - alpha(t)| over one period
    double max_dev_beta = 0.0;
    double max_abs_alpha = 0.0;  ///< max modulus over the compared window
    double max_abs_beta = 0.0;
    bool passed = false;
};

/// Fixed-step RK4 integration of the classical mean-field equations
///   alpha' = -i Delta0 alpha - (kappa/2) alpha + i g alpha (beta* + beta)^2 + eps_l(t)
///   beta'  = -i omega_m beta - (gamma/2) beta + 2 i g |alpha|^2 (beta* + beta) - i eta omega_m
/// from alpha(0) = alpha0, beta(0) = beta0 (both default zero).
///
/// Throws StepTooLarge unless dt resolves max(|Delta0|, omega_m, Omega) with
/// at least 50 steps per period.
MeanFieldTrajectory integrate_mean_field(const SystemParams& p, const DriveModulation& d,
                                         double t_end, double dt,
                                         Complex alpha0 = {}, Complex beta0 = {});

/// Step that resolves every relevant frequency with 200 points per period.
double default_mean_field_dt(const SystemParams& p, const DriveModulation& d);

/// Evaluates the Floquet ansatz at time t; returns (alpha, beta).
std::pair<Complex, Complex> eval_floquet(const FloquetAmplitudes& f, double t);

/// Delta = Delta0 - g (beta* + beta)^2. Requires delta0 to be set.
double effective_detuning(const SystemParams& p, Complex beta);

/// Compares the trajectory against itself shifted by tau, over
/// t in [t_min, t_min + tau]. The trajectory must cover [t_min, t_min + 2 tau]
/// (InsufficientSpan otherwise); tau is snapped to the nearest grid multiple.
/// Passes iff both deviations stay below tol times the max modulus.
PeriodicityReport check_periodicity(const MeanFieldTrajectory& traj, double tau,
                                    double t_min, double tol);

/// Diagnostic least-squares projection of a trajectory tail onto the
/// three-sideband ansatz. Not a calibrated inverse solver.
FloquetAmplitudes fit_floquet_amplitudes(const MeanFieldTrajectory& traj,
                                         double omega_a, double omega_b, double t_min);

} // namespace omsq
