#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "omsq/config.hpp"

namespace omsq {

/// One sweep grid point. Absent optionals are written out as explicit
/// "unstable" / "undefined" markers, never as blanks.
struct SweepPoint {
    double axis = 0.0;
    double kappa = 0.0;
    std::optional<double> ratio_g1_g0;   ///< undefined when G0 = 0
    std::optional<double> v_lyapunov;    ///< steady <Q^2> from the Lyapunov solve
    std::optional<double> v_adiabatic;   ///< closed-form adiabatic value
    std::optional<double> v_spectral;    ///< spectrum integral
    std::optional<double> occupancy;     ///< Bogoliubov occupancy from the steady state
    std::optional<double> e_n;           ///< logarithmic negativity
    bool stable = false;
};

struct SweepResult {
    std::string axis_name;
    std::vector<SweepPoint> points;
};

struct OptimalRatio {
    double ratio = 0.0;
    double variance = 0.0;
};

struct KappaSweepPoint {
    double kappa = 0.0;
    std::optional<double> ratio_opt;
    std::optional<double> v_min;
};

/// All observables for a single parameter set; shared by every sweep.
SweepPoint evaluate_point(const SystemParams& p, const FloquetAmplitudes& f,
                          const QuadratureOptions& quad, A2cSign sign,
                          double axis_value, bool with_spectral = true);

/// Sweeps s = b_m1 + b_1 over [sweep.lo, sweep.hi] at fixed b_1/b_m1,
/// recomputing every coupling and observable per point. Unstable points are
/// marked, never fatal.
SweepResult run_ratio_sweep(const RunConfig& rc);

/// Variance and entanglement against n_b, once per kappa in sweep.kappa_set.
SweepResult run_nb_sweep(const RunConfig& rc);

/// For each kappa on the grid, runs a ratio sweep and reports the optimum.
std::vector<KappaSweepPoint> run_kappa_sweep(const RunConfig& rc);

/// Argmin of the Lyapunov variance over stable points, with parabolic
/// refinement between grid neighbours. Needs >= 3 stable points
/// (NoStablePoints otherwise).
OptimalRatio optimal_ratio(const SweepResult& sweep);

void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
void write_kappa_sweep_csv(std::ostream& os, const std::vector<KappaSweepPoint>& points);

/// Grid helper: n points from lo to hi, linear or logarithmic.
std::vector<double> sweep_grid(double lo, double hi, std::size_t n, bool log_axis);

/// 17-significant-digit rendering used by every CSV writer.
std::string csv_double(double v);

} // namespace omsq
