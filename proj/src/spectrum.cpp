#include "omsq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "omsq/covariance.hpp"

namespace omsq {

namespace {

constexpr Complex kI{0.0, 1.0};

using Matrix4cd = Eigen::Matrix4cd;

TransferCoefficients resolvent_row(const Eigen::Matrix4d& m, const SystemParams& p,
                                   double omega) {
    Matrix4cd a = kI * omega * Matrix4cd::Identity() + m.cast<Complex>();
    Eigen::FullPivLU<Matrix4cd> lu(a);
    if (!lu.isInvertible())
        throw SingularResolvent("i w I + M is singular at this frequency");
    const Matrix4cd inv = lu.inverse();
    const double sk = std::sqrt(p.kappa), sy = std::sqrt(p.gamma);
    return {inv(2, 0) * sk, inv(2, 1) * sk, inv(2, 2) * sy, inv(2, 3) * sy};
}

// Recursive adaptive Simpson with Richardson correction.
struct SimpsonResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

void adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb, double whole, double tol,
                      int depth, SimpsonResult& out) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) {
        out.value += left + right + delta / 15.0;
        out.error += std::abs(delta) / 15.0;
        out.converged = false;
        return;
    }
    if (std::abs(delta) <= 15.0 * tol) {
        out.value += left + right + delta / 15.0;
        out.error += std::abs(delta) / 15.0;
        return;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
    adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

SimpsonResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                 double tol, int depth) {
    SimpsonResult out;
    if (a == b)
        return out;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth, out);
    return out;
}

} // namespace

TransferCoefficients transfer_coefficients(const CouplingSet& c, const SystemParams& p,
                                           double omega) {
    const DriftMatrix dm = drift_rwa(c, p);
    return resolvent_row(dm.m, p, omega);
}

TransferCoefficients transfer_coefficients_closed_form(const CouplingSet& c,
                                                       const SystemParams& p, double omega) {
    const RealCouplings rc = c.as_real();
    const double k = p.kappa, ym = p.gamma, w = omega;
    const double gp = rc.g_plus, gm = rc.g_minus, tp = rc.gt_plus, tm = rc.gt_minus;
    const Complex km2iw = k - 2.0 * kI * w;
    const Complex wik = 2.0 * w + kI * k;
    const Complex wiy = 2.0 * w + kI * ym;
    const Complex den = km2iw * km2iw * (-4.0 * tm * tp + wiy * wiy) +
                        8.0 * gm * gp * wik * wiy - 16.0 * gm * gm * gp * gp;
    if (std::abs(den) == 0.0)
        throw SingularResolvent("closed-form denominator vanishes");
    const double sk = std::sqrt(k), sy = std::sqrt(ym);
    TransferCoefficients tc;
    tc.a_x = -8.0 * gp * sk * tm * km2iw / den;
    tc.a_y = 4.0 * gm * sk * (-4.0 * gm * gp + wik * wiy) / den;
    tc.a_q = 2.0 * km2iw * sy * (4.0 * gm * gp + km2iw * (ym - 2.0 * kI * w)) / den;
    tc.a_p = -4.0 * tm * km2iw * km2iw * sy / den;
    return tc;
}

double position_spectrum(const CouplingSet& c, const SystemParams& p, double omega) {
    const TransferCoefficients tc = transfer_coefficients(c, p, omega);
    return (std::norm(tc.a_x) + std::norm(tc.a_y)) * (p.n_a + 0.5) +
           (std::norm(tc.a_q) + std::norm(tc.a_p)) * (p.n_b + 0.5);
}

SpectrumTable sample_spectrum(const CouplingSet& c, const SystemParams& p,
                              const std::vector<double>& omegas) {
    SpectrumTable table;
    table.omegas = omegas;
    table.s_q.reserve(omegas.size());
    for (const double w : omegas)
        table.s_q.push_back(position_spectrum(c, p, w));
    return table;
}

SpectrumIntegral integrate_spectrum(const CouplingSet& c, const SystemParams& p,
                                    const QuadratureOptions& opts) {
    const DriftMatrix dm = drift_rwa(c, p);
    if (max_real_eigenvalue(dm.m) >= 0.0)
        throw UnstableDrift("spectrum integral requires a Hurwitz drift");
    const RealCouplings rc = c.as_real();

    double window = opts.window.value_or(
        50.0 * std::max({p.kappa, std::abs(rc.g_plus), p.gamma, std::abs(rc.gt_plus)}));

    // Resolvent poles sit at w = -Im(lambda) with half-width |Re(lambda)|;
    // split the domain there so the narrow mechanical lines cannot be missed.
    Eigen::EigenSolver<Eigen::Matrix4d> es(dm.m, false);
    std::set<double> cuts{-window, 0.0, window};
    for (int i = 0; i < 4; ++i) {
        const double center = -es.eigenvalues()(i).imag();
        const double width = std::abs(es.eigenvalues()(i).real());
        window = std::max(window, std::abs(center) + 50.0 * width);
        for (const double f : {-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0})
            cuts.insert(center + f * width);
    }
    cuts.insert(-window);
    cuts.insert(window);

    auto f = [&](double w) { return position_spectrum(c, p, w); };

    std::vector<std::pair<double, double>> intervals;
    double prev = -window;
    for (const double cut : cuts) {
        if (cut <= prev || cut < -window)
            continue;
        const double hi = std::min(cut, window);
        if (hi > prev)
            intervals.emplace_back(prev, hi);
        prev = hi;
    }

    // Tails via u = 1/w: integral_{W}^{inf} S dw = integral_0^{1/W} S(1/u)/u^2 du,
    // whose integrand tends to gamma (n_b + 1/2) at u = 0.
    const double tail_limit = p.gamma * (p.n_b + 0.5);
    auto tail_integrand = [&, tail_limit](double sign) {
        return [&f, sign, tail_limit](double u) {
            if (u == 0.0)
                return tail_limit;
            return f(sign / u) / (u * u);
        };
    };

    // two-stage budget: coarse pass fixes the scale, refined pass meets rel_tol
    auto run = [&](double tol, int depth) {
        SimpsonResult total;
        for (const auto& [lo, hi] : intervals) {
            const SimpsonResult r = integrate_interval(f, lo, hi, tol, depth);
            total.value += r.value;
            total.error += r.error;
            total.converged = total.converged && r.converged;
        }
        for (const double sign : {1.0, -1.0}) {
            const SimpsonResult r =
                integrate_interval(tail_integrand(sign), 0.0, 1.0 / window, tol, depth);
            total.value += r.value;
            total.error += r.error;
            total.converged = total.converged && r.converged;
        }
        return total;
    };

    double scale = 0.0;
    for (const double w : cuts)
        if (std::abs(w) <= window)
            scale = std::max(scale, std::abs(f(w)) * window);
    const SimpsonResult rough = run(std::max(opts.rel_tol * scale, 1e-300), 20);
    const double budget = std::max(std::abs(rough.value), 1e-300) * opts.rel_tol /
                          static_cast<double>(intervals.size() + 2);
    SimpsonResult total = run(budget, opts.max_depth);

    if (!total.converged)
        throw ToleranceNotMet("spectrum quadrature did not reach the requested tolerance");

    const double twopi = 2.0 * std::numbers::pi;
    return {total.value / twopi, total.error / twopi};
}

} // namespace omsq
