#include "omsq/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace omsq {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex drive_at(const DriveModulation& d, double t) {
    return d.eps_m1 * std::exp(kI * d.omega * t) + d.eps_0 +
           d.eps_1 * std::exp(-kI * d.omega * t);
}

struct MeanFieldState {
    Complex alpha, beta;
};

MeanFieldState rhs(const SystemParams& p, const DriveModulation& d, double delta0,
                   double t, const MeanFieldState& s) {
    const Complex disp = std::conj(s.beta) + s.beta;
    MeanFieldState ds;
    ds.alpha = -kI * delta0 * s.alpha - 0.5 * p.kappa * s.alpha +
               kI * p.g * s.alpha * disp * disp + drive_at(d, t);
    ds.beta = -kI * p.omega_m * s.beta - 0.5 * p.gamma * s.beta +
              2.0 * kI * p.g * std::norm(s.alpha) * disp - kI * p.eta * p.omega_m;
    return ds;
}

} // namespace

double default_mean_field_dt(const SystemParams& p, const DriveModulation& d) {
    const double fmax = std::max({p.omega_m, d.omega, std::abs(p.delta0.value_or(0.0))});
    return 2.0 * std::numbers::pi / (200.0 * fmax);
}

MeanFieldTrajectory integrate_mean_field(const SystemParams& p, const DriveModulation& d,
                                         double t_end, double dt,
                                         Complex alpha0, Complex beta0) {
    if (!p.delta0.has_value())
        throw std::invalid_argument("integrate_mean_field requires delta0");
    if (!(d.omega > 0.0))
        throw std::invalid_argument("drive modulation frequency must be > 0");
    if (!(dt > 0.0))
        throw StepTooLarge("dt must be > 0");
    const double fmax = std::max({std::abs(*p.delta0), p.omega_m, d.omega});
    const double dt_max = 2.0 * std::numbers::pi / (50.0 * fmax);
    if (dt > dt_max)
        throw StepTooLarge("dt does not resolve the fastest frequency with >= 50 steps per period");

    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    MeanFieldTrajectory traj;
    traj.times.reserve(n + 1);
    traj.alpha.reserve(n + 1);
    traj.beta.reserve(n + 1);

    MeanFieldState s{alpha0, beta0};
    double t = 0.0;
    const double d0 = *p.delta0;
    for (std::size_t i = 0; i <= n; ++i) {
        traj.times.push_back(t);
        traj.alpha.push_back(s.alpha);
        traj.beta.push_back(s.beta);
        if (i == n)
            break;
        const auto k1 = rhs(p, d, d0, t, s);
        const auto k2 = rhs(p, d, d0, t + 0.5 * dt,
                            {s.alpha + 0.5 * dt * k1.alpha, s.beta + 0.5 * dt * k1.beta});
        const auto k3 = rhs(p, d, d0, t + 0.5 * dt,
                            {s.alpha + 0.5 * dt * k2.alpha, s.beta + 0.5 * dt * k2.beta});
        const auto k4 = rhs(p, d, d0, t + dt,
                            {s.alpha + dt * k3.alpha, s.beta + dt * k3.beta});
        s.alpha += dt / 6.0 * (k1.alpha + 2.0 * (k2.alpha + k3.alpha) + k4.alpha);
        s.beta += dt / 6.0 * (k1.beta + 2.0 * (k2.beta + k3.beta) + k4.beta);
        t = dt * static_cast<double>(i + 1);
        if (!std::isfinite(std::abs(s.alpha)) || !std::isfinite(std::abs(s.beta)))
            throw NonFiniteState("mean-field trajectory diverged");
    }
    return traj;
}

std::pair<Complex, Complex> eval_floquet(const FloquetAmplitudes& f, double t) {
    const Complex alpha = f.a_m1 * std::exp(kI * f.omega_a * t) + f.a_0 +
                          f.a_1 * std::exp(-kI * f.omega_a * t);
    const Complex beta = f.b_m1 * std::exp(kI * f.omega_b * t) + f.b_0 +
                         f.b_1 * std::exp(-kI * f.omega_b * t);
    return {alpha, beta};
}

double effective_detuning(const SystemParams& p, Complex beta) {
    if (!p.delta0.has_value())
        throw std::invalid_argument("effective_detuning requires delta0");
    const double disp = (std::conj(beta) + beta).real();
    return *p.delta0 - p.g * disp * disp;
}

PeriodicityReport check_periodicity(const MeanFieldTrajectory& traj, double tau,
                                    double t_min, double tol) {
    const double dt = traj.dt();
    if (traj.times.size() < 3 || !(dt > 0.0))
        throw InsufficientSpan("trajectory too short for a periodicity check");
    const auto k = static_cast<std::size_t>(std::llround(tau / dt));
    if (k == 0)
        throw InsufficientSpan("tau is below the trajectory resolution");

    auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t_min - 0.5 * dt);
    if (it == traj.times.end())
        throw InsufficientSpan("t_min is beyond the trajectory");
    const auto i0 = static_cast<std::size_t>(it - traj.times.begin());
    if (i0 + 2 * k >= traj.times.size())
        throw InsufficientSpan("trajectory does not cover [t_min, t_min + 2 tau]");

    PeriodicityReport rep;
    for (std::size_t i = i0; i <= i0 + k; ++i) {
        rep.max_dev_alpha = std::max(rep.max_dev_alpha, std::abs(traj.alpha[i + k] - traj.alpha[i]));
        rep.max_dev_beta = std::max(rep.max_dev_beta, std::abs(traj.beta[i + k] - traj.beta[i]));
        rep.max_abs_alpha = std::max({rep.max_abs_alpha, std::abs(traj.alpha[i]), std::abs(traj.alpha[i + k])});
        rep.max_abs_beta = std::max({rep.max_abs_beta, std::abs(traj.beta[i]), std::abs(traj.beta[i + k])});
    }
    const bool alpha_ok = rep.max_dev_alpha < tol * rep.max_abs_alpha ||
                          (rep.max_abs_alpha == 0.0 && rep.max_dev_alpha == 0.0);
    const bool beta_ok = rep.max_dev_beta < tol * rep.max_abs_beta ||
                         (rep.max_abs_beta == 0.0 && rep.max_dev_beta == 0.0);
    rep.passed = alpha_ok && beta_ok;
    return rep;
}

FloquetAmplitudes fit_floquet_amplitudes(const MeanFieldTrajectory& traj,
                                         double omega_a, double omega_b, double t_min) {
    auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t_min);
    const auto i0 = static_cast<std::size_t>(it - traj.times.begin());
    const auto n = traj.times.size();
    if (n < i0 + 8)
        throw InsufficientSpan("not enough samples beyond t_min for a projection");

    auto project = [&](const std::vector<Complex>& sig, double omega) {
        Eigen::MatrixXcd basis(n - i0, 3);
        Eigen::VectorXcd y(n - i0);
        for (std::size_t i = i0; i < n; ++i) {
            const double t = traj.times[i];
            basis(i - i0, 0) = std::exp(kI * omega * t);
            basis(i - i0, 1) = 1.0;
            basis(i - i0, 2) = std::exp(-kI * omega * t);
            y(i - i0) = sig[i];
        }
        Eigen::Vector3cd x = (basis.adjoint() * basis).ldlt().solve(basis.adjoint() * y);
        return x;
    };

    const Eigen::Vector3cd a = project(traj.alpha, omega_a);
    const Eigen::Vector3cd b = project(traj.beta, omega_b);
    FloquetAmplitudes f;
    f.a_m1 = a(0);
    f.a_0 = a(1);
    f.a_1 = a(2);
    f.b_m1 = b(0);
    f.b_0 = b(1);
    f.b_1 = b(2);
    f.omega_a = omega_a;
    f.omega_b = omega_b;
    return f;
}

} // namespace omsq
