#include "omsq/bogoliubov.hpp"

#include <cmath>

namespace omsq {

namespace {

constexpr double kDegenerateTol = 1e-15;

struct AdiabaticTerms {
    double e2r, em2r;     // e^{+-2r}
    double h;
    double c;             // G+ Gt- / (G- h)
    double d;             // G- Gt- / (G+ h)
    double geff2;
    RealCouplings rc;
};

AdiabaticTerms adiabatic_terms(const CouplingSet& c, const char* who) {
    if (!c.r.has_value() || !c.g_eff.has_value() || !c.h.has_value())
        throw DegenerateDenominator(std::string(who) +
                                    ": squeeze parameter undefined (|G1| >= |G0|)");
    AdiabaticTerms t;
    t.rc = c.as_real();
    t.e2r = std::exp(2.0 * *c.r);
    t.em2r = std::exp(-2.0 * *c.r);
    t.h = *c.h;
    t.geff2 = *c.g_eff * *c.g_eff;
    if (t.rc.g_minus == 0.0 || t.rc.g_plus == 0.0)
        throw DegenerateDenominator(std::string(who) + ": G+ or G- vanishes");
    t.c = t.rc.g_plus * t.rc.gt_minus / (t.rc.g_minus * t.h);
    t.d = t.rc.g_minus * t.rc.gt_minus / (t.rc.g_plus * t.h);
    return t;
}

double denominator_or_throw(const AdiabaticTerms& t, const char* who) {
    const double den = t.rc.gt_minus * t.rc.gt_minus - t.h * t.h;
    if (std::abs(den) < kDegenerateTol)
        throw DegenerateDenominator(std::string(who) + ": Gt_-^2 - h^2 is degenerate");
    return den;
}

} // namespace

double bogoliubov_occupancy(const Eigen::Matrix2d& v_mech, double r) {
    if (!std::isfinite(r))
        throw std::invalid_argument("squeeze parameter must be finite");
    const double vq = v_mech(0, 0);
    const double vp = v_mech(1, 1);
    if (!(vq > 0.0) || !(vp > 0.0) || !(v_mech.determinant() > 0.0))
        throw NonPositiveVariance("mechanical covariance block must be positive-definite");
    return 0.5 * (std::exp(2.0 * r) * vq + std::exp(-2.0 * r) * vp) - 0.5;
}

BogoliubovState adiabatic_bogoliubov_variances(const CouplingSet& c, const SystemParams& p,
                                               A2cSign sign) {
    AdiabaticTerms t;
    try {
        t = adiabatic_terms(c, "adiabatic_bogoliubov_variances");
    } catch (const DegenerateDenominator& e) {
        throw SingularSystem(e.what());
    }
    const double det = 1.0 - t.c * t.d;  // = (h^2 - Gt_-^2)/h^2
    if (std::abs(t.rc.gt_minus * t.rc.gt_minus - t.h * t.h) < kDegenerateTol)
        throw SingularSystem("adiabatic 2x2 system is degenerate (Gt_-^2 -> h^2)");

    const double a = (2.0 * t.geff2 / (p.kappa * t.h)) * (p.n_a + 0.5);
    const double b = (p.gamma / (2.0 * t.h)) * t.e2r * (p.n_b + 0.5);
    const double bp = (p.gamma / (2.0 * t.h)) * t.em2r * (p.n_b + 0.5);
    const double s = (sign == A2cSign::printed) ? 1.0 : -1.0;

    //   u - c v = a + b
    //  -d u + v = a - s bp
    const double u = ((a + b) + t.c * (a - s * bp)) / det;
    const double v = ((a - s * bp) + t.d * (a + b)) / det;

    BogoliubovState st;
    st.x_var = u;
    st.y_var = v;
    st.occupancy = 0.5 * (u + v) - 0.5;
    return st;
}

double adiabatic_variance(const CouplingSet& c, const SystemParams& p, A2cSign sign) {
    const AdiabaticTerms t = adiabatic_terms(c, "adiabatic_variance");
    const double den = denominator_or_throw(t, "adiabatic_variance");
    const double s = (sign == A2cSign::printed) ? 1.0 : -1.0;
    const double pref = t.h * t.em2r / (2.0 * den);
    const double braces = p.gamma * (p.n_b + 0.5) * (s * t.c * t.em2r - t.e2r) -
                          (4.0 * t.geff2 / p.kappa) * (p.n_a + 0.5) * (1.0 + t.c);
    return pref * braces;
}

} // namespace omsq
