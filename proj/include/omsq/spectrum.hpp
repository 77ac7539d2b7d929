#pragma once

#include <optional>
#include <vector>

#include "omsq/params.hpp"

namespace omsq {

/// Frequency-domain transfer coefficients of the mechanical position:
///   Q(w) = a_x X_in + a_y Y_in + a_q Q_in + a_p P_in.
struct TransferCoefficients {
    Complex a_x, a_y, a_q, a_p;
};

struct SpectrumTable {
    std::vector<double> omegas;
    std::vector<double> s_q;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    int max_depth = 60;
    std::optional<double> window;  ///< half-width W; defaults to 50*max(kappa, G+, gamma, |Gt+|)
};

struct SpectrumIntegral {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Row 3 of (i w I + M)^{-1}, scaled by the noise prefactors
/// (sqrt(kappa), sqrt(kappa), sqrt(gamma), sqrt(gamma)).
/// Throws SingularResolvent when i w I + M is not invertible.
TransferCoefficients transfer_coefficients(const CouplingSet& c, const SystemParams& p,
                                           double omega);

/// The same four coefficients from the published closed forms (with the
/// appendix's gamma_m read as gamma). Kept as an independent algebraic route;
/// the two must agree to 1e-10 relative.
TransferCoefficients transfer_coefficients_closed_form(const CouplingSet& c,
                                                       const SystemParams& p, double omega);

/// S_Q(w) = (|a_x|^2 + |a_y|^2)(n_a + 1/2) + (|a_q|^2 + |a_p|^2)(n_b + 1/2),
/// using a(-w) = conj(a(w)) for the real drift.
double position_spectrum(const CouplingSet& c, const SystemParams& p, double omega);

SpectrumTable sample_spectrum(const CouplingSet& c, const SystemParams& p,
                              const std::vector<double>& omegas);

/// <Q^2>_s = (1/2 pi) Integral S_Q(w) dw over the whole real line.
/// Adaptive Simpson on [-W, W] split at the resolvent peaks, plus exact
/// tail integrals via the substitution u = 1/w. Throws UnstableDrift when
/// the drift is not Hurwitz, ToleranceNotMet when refinement bottoms out.
SpectrumIntegral integrate_spectrum(const CouplingSet& c, const SystemParams& p,
                                    const QuadratureOptions& opts = {});

} // namespace omsq
