#include "omsq/params.hpp"

#include <cmath>

namespace omsq {

bool CouplingSet::is_real(double tol) const {
    auto ok = [tol](const Complex& z) {
        return std::abs(z.imag()) <= tol * (1.0 + std::abs(z));
    };
    return ok(g0) && ok(g1) && ok(gt0) && ok(gt1);
}

RealCouplings CouplingSet::as_real(double tol) const {
    if (!is_real(tol))
        throw std::invalid_argument("coupling set has non-negligible imaginary parts");
    RealCouplings rc;
    rc.g0 = g0.real();
    rc.g1 = g1.real();
    rc.gt0 = gt0.real();
    rc.gt1 = gt1.real();
    rc.g_plus = rc.g0 + rc.g1;
    rc.g_minus = rc.g0 - rc.g1;
    rc.gt_plus = rc.gt0 + rc.gt1;
    rc.gt_minus = rc.gt0 - rc.gt1;
    return rc;
}

SystemParams validate_params(const SystemParams& p) {
    if (!(p.kappa > 0.0))
        throw NonPositiveRate("cavity decay kappa must be > 0");
    if (!(p.gamma > 0.0))
        throw NonPositiveRate("mechanical decay gamma must be > 0");
    if (p.n_a < 0.0)
        throw NegativeOccupancy("optical occupancy n_a must be >= 0");
    if (p.n_b < 0.0)
        throw NegativeOccupancy("mechanical occupancy n_b must be >= 0");
    if (p.g < 0.0)
        throw Error("coupling g must be >= 0");
    if (p.omega_m != 1.0)
        throw Error("all rates are scaled by the mechanical frequency; omega_m must be 1");
    return p;
}

CouplingSet make_couplings(Complex g0, Complex g1, Complex gt0, Complex gt1,
                           const SystemParams& p) {
    CouplingSet c;
    c.g0 = g0;
    c.g1 = g1;
    c.gt0 = gt0;
    c.gt1 = gt1;
    // g_eff, r and h exist only in the real, sub-degenerate regime |G1| < |G0|.
    if (c.is_real() && std::abs(c.g1) < std::abs(c.g0)) {
        const double re0 = c.g0.real();
        const double re1 = c.g1.real();
        const double geff2 = re0 * re0 - re1 * re1;
        c.g_eff = std::sqrt(geff2);
        c.r = std::atanh(re1 / re0);
        c.h = 2.0 * geff2 / p.kappa + p.gamma / 2.0;
    }
    return c;
}

CouplingSet compute_couplings(const SystemParams& p, const FloquetAmplitudes& f) {
    const double g = p.g;
    return make_couplings(
        2.0 * g * (2.0 * f.a_0 * f.b_0 + (f.a_m1 + f.a_1) * (f.b_m1 + f.b_1)),
        2.0 * g * (f.a_0 * (f.b_m1 + f.b_1) + 2.0 * f.a_1 * f.b_0),
        2.0 * g * (f.a_0 * f.a_0 + f.a_m1 * f.a_m1 + f.a_1 * f.a_1),
        2.0 * g * f.a_0 * (f.a_m1 + f.a_1), p);
}

} // namespace omsq
