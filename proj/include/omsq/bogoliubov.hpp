#pragma once

#include <Eigen/Dense>

#include "omsq/params.hpp"

namespace omsq {

/// Sign convention for the mechanical-noise self-correlation entering the
/// Y_beta equation. `printed` keeps the closed-form steady state exactly as
/// published; `positive` flips that one term to a positive self-correlation.
enum class A2cSign { printed, positive };

/// Steady-state second moments of the squeezed-frame mechanical mode
/// (X_beta = e^{r} Q, Y_beta = e^{-r} P).
struct BogoliubovState {
    double x_var = 0.0;      ///< <X_beta^2>
    double y_var = 0.0;      ///< <Y_beta^2>
    double occupancy = 0.0;  ///< <beta^dag beta> = (x_var + y_var)/2 - 1/2
};

/// Occupancy of the Bogoliubov mode from a mechanical covariance block:
///   <beta^dag beta> = (e^{2r} V_QQ + e^{-2r} V_PP) / 2 - 1/2.
/// The QP cross term drops out of the symmetrized number operator.
/// Throws NonPositiveVariance unless v_mech is positive-definite.
double bogoliubov_occupancy(const Eigen::Matrix2d& v_mech, double r);

/// Steady state of the adiabatically eliminated (cavity follows mechanics)
/// Bogoliubov quadratures, solved from the 2x2 linear system in
/// (<X_beta^2>, <Y_beta^2>). Algebraically identical to adiabatic_variance.
/// Throws SingularSystem at the degenerate denominator Gt_-^2 -> h^2.
BogoliubovState adiabatic_bogoliubov_variances(const CouplingSet& c, const SystemParams& p,
                                               A2cSign sign = A2cSign::printed);

/// Closed-form adiabatic steady-state position variance <Q^2>_s,
/// evaluated literally. Throws DegenerateDenominator at the Gt_-^2 = h^2 pole
/// (tolerance 1e-15) and when the squeeze parameter is undefined.
double adiabatic_variance(const CouplingSet& c, const SystemParams& p,
                          A2cSign sign = A2cSign::printed);

} // namespace omsq
