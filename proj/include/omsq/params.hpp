#pragma once

#include <complex>
#include <optional>

#include "omsq/errors.hpp"

namespace omsq {

using Complex = std::complex<double>;

/// Physical rates and occupancies. Everything is expressed in units of the
/// mechanical frequency, so omega_m is pinned to 1 and all other rates are
/// dimensionless multiples of it.
struct SystemParams {
    std::optional<double> delta0;        ///< bare cavity detuning (optional)
    std::optional<double> delta = 1.0;   ///< effective detuning of the linearized dynamics
    double omega_m = 1.0;                ///< reference unit, fixed to 1
    double g = 1e-4;                     ///< quadratic optomechanical coupling
    double kappa = 0.1;                  ///< cavity decay rate
    double gamma = 1e-6;                 ///< mechanical decay rate
    double n_a = 0.0;                    ///< optical thermal occupancy
    double n_b = 10.0;                   ///< mechanical thermal occupancy
    double eta = 0.0;                    ///< static force strength
};

/// Classical sideband amplitudes of the long-time periodic (Floquet) solution,
///   alpha(t) = a_m1 e^{+i Omega_a t} + a_0 + a_1 e^{-i Omega_a t}
/// and analogously for beta with the b coefficients and Omega_b.
struct FloquetAmplitudes {
    Complex a_m1{0.8, 0.0};
    Complex a_0{2.0, 0.0};
    Complex a_1{0.8, 0.0};
    Complex b_m1{25.0, 0.0};
    Complex b_0{100.0, 0.0};
    Complex b_1{62.5, 0.0};
    double omega_a = 2.0;
    double omega_b = 2.0;
};

/// Real views of the effective couplings, for consumers that build real
/// drift matrices. Only valid when the underlying set is real.
struct RealCouplings {
    double g0, g1, gt0, gt1;
    double g_plus, g_minus, gt_plus, gt_minus;
};

/// Effective coupling constants of the linearized dynamics.
///
/// The four base couplings are evaluated literally from the sideband
/// amplitudes (complex inputs are allowed and propagate), the derived
/// quantities g_eff, r and h are defined only for real sets with |G1| < |G0|;
/// outside that region they stay unset and flag the degenerate regime.
struct CouplingSet {
    Complex g0, g1, gt0, gt1;

    Complex g_plus() const { return g0 + g1; }
    Complex g_minus() const { return g0 - g1; }
    Complex gt_plus() const { return gt0 + gt1; }
    Complex gt_minus() const { return gt0 - gt1; }

    std::optional<double> g_eff;  ///< sqrt(G0^2 - G1^2), beam-splitter rate
    std::optional<double> r;      ///< squeeze parameter, tanh(r) = G1/G0
    std::optional<double> h;      ///< 2 g_eff^2 / kappa + gamma / 2

    /// True when all four couplings have negligible imaginary part.
    bool is_real(double tol = 1e-12) const;

    /// Real parts of the couplings; throws std::invalid_argument when the
    /// set is not real within tol.
    RealCouplings as_real(double tol = 1e-12) const;
};

/// Returns p unchanged when all invariants hold.
/// Throws NonPositiveRate (kappa or gamma <= 0) or NegativeOccupancy
/// (n_a or n_b < 0); other invariant breaks (g < 0, omega_m != 1) raise
/// the generic Error.
SystemParams validate_params(const SystemParams& p);

/// Effective couplings of the linearized quantum Langevin equations:
///   G0  = 2g { 2 a0 b0 + (a_m1 + a1)(b_m1 + b1) }
///   G1  = 2g { a0 (b_m1 + b1) + 2 a1 b0 }
///   Gt0 = 2g ( a0^2 + a_m1^2 + a1^2 )
///   Gt1 = 2g a0 (a_m1 + a1)
/// plus the derived quantities when they are defined.
CouplingSet compute_couplings(const SystemParams& p, const FloquetAmplitudes& f);

/// Assembles a CouplingSet from raw coupling values (derived fields filled in
/// the same way as compute_couplings).
CouplingSet make_couplings(Complex g0, Complex g1, Complex gt0, Complex gt1,
                           const SystemParams& p);

} // namespace omsq
