#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "omsq/classical.hpp"

using namespace omsq;
using doctest::Approx;

namespace {
constexpr Complex kI{0.0, 1.0};
}

TEST_CASE("constant drive relaxes to the linear fixed point") {
    SystemParams p = test::fig2_params();
    p.delta0 = 0.7;
    p.g = 0.0;
    p.eta = 0.0;
    DriveModulation d;
    d.eps_m1 = d.eps_1 = 0.0;
    d.eps_0 = 1.0;
    d.omega = 2.0;

    const double t_end = 20.0 / p.kappa;
    const auto traj = integrate_mean_field(p, d, t_end, default_mean_field_dt(p, d));
    const Complex expected = d.eps_0 / (kI * *p.delta0 + 0.5 * p.kappa);
    CHECK(std::abs(traj.alpha.back() - expected) / std::abs(expected) < 1e-4);
    CHECK(std::abs(traj.beta.back()) < 1e-12);
}

TEST_CASE("static force displaces the mechanical fixed point") {
    SystemParams p = test::fig2_params();
    p.delta0 = 1.0;
    p.g = 0.0;
    p.gamma = 0.05;  // fast enough mechanical relaxation to reach the fixed point
    p.eta = 2.0;
    DriveModulation d;
    d.eps_m1 = d.eps_0 = d.eps_1 = 0.0;
    d.omega = 2.0;

    const double t_end = 20.0 / p.gamma;
    const auto traj = integrate_mean_field(p, d, t_end, default_mean_field_dt(p, d));
    const Complex expected =
        -kI * p.eta * p.omega_m / (kI * p.omega_m + 0.5 * p.gamma);
    CHECK(std::abs(traj.beta.back() - expected) / std::abs(expected) < 1e-3);
    // gamma << omega_m limit: beta ~ -eta
    CHECK(std::abs(expected - Complex(-p.eta, 0.0)) / p.eta < 0.05);
}

TEST_CASE("g = 0 trajectory matches the closed-form resolvent solution") {
    SystemParams p = test::fig2_params();
    p.delta0 = 1.3;
    p.g = 0.0;
    DriveModulation d;
    d.eps_m1 = d.eps_1 = 0.0;
    d.eps_0 = {0.7, 0.4};
    d.omega = 2.0;

    const double dt = 2.0 * std::numbers::pi / 2000.0;
    const auto traj = integrate_mean_field(p, d, 30.0, dt);
    const Complex lam = kI * *p.delta0 + 0.5 * p.kappa;
    for (std::size_t i = 100; i < traj.times.size(); i += 997) {
        const double t = traj.times[i];
        const Complex exact = d.eps_0 / lam * (1.0 - std::exp(-lam * t));
        CHECK(std::abs(traj.alpha[i] - exact) / std::abs(exact) < 1e-6);
    }
}

TEST_CASE("modulated drive settles into a Floquet-periodic orbit") {
    SystemParams p = test::fig2_params();  // headline rates
    p.delta0 = 1.0;
    DriveModulation d;  // defaults: (0.4, 1.0, 0.4), Omega = 2
    const double tau = 2.0 * std::numbers::pi / d.omega;
    const double t_min = 50.0 / p.kappa;
    const double dt = tau / 256.0;

    const auto traj = integrate_mean_field(p, d, t_min + 2.1 * tau, dt);
    const PeriodicityReport rep = check_periodicity(traj, tau, t_min, 1e-3);
    CHECK(rep.passed);
    CHECK(rep.max_abs_alpha > 0.1);
    CHECK(rep.max_dev_alpha < 1e-3 * rep.max_abs_alpha);
}

TEST_CASE("step control enforces 50 steps per fastest period") {
    SystemParams p = test::fig2_params();
    p.delta0 = 1.0;
    DriveModulation d;
    const double dt_bad = 2.0 * std::numbers::pi / (40.0 * d.omega);
    CHECK_THROWS_AS(integrate_mean_field(p, d, 10.0, dt_bad), StepTooLarge);
    CHECK_THROWS_AS(integrate_mean_field(p, d, 10.0, 0.0), StepTooLarge);
}

TEST_CASE("integrator shows fourth-order convergence") {
    SystemParams p = test::fig2_params();
    p.delta0 = 1.0;
    p.eta = 1.0;  // nonzero force so the nonlinear terms participate
    DriveModulation d;
    const double t_end = 5.0;

    auto endpoint = [&](double dt) {
        const auto traj = integrate_mean_field(p, d, t_end, dt);
        return std::pair{traj.alpha.back(), traj.beta.back()};
    };
    const double dt0 = 0.02;
    const auto ref = endpoint(dt0 / 8.0);
    const auto c1 = endpoint(dt0);
    const auto c2 = endpoint(dt0 / 2.0);
    const double e1 = std::abs(c1.first - ref.first) + std::abs(c1.second - ref.second);
    const double e2 = std::abs(c2.first - ref.first) + std::abs(c2.second - ref.second);
    CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("floquet ansatz evaluation") {
    const FloquetAmplitudes f = test::fig2_floquet();
    SUBCASE("t = 0 sums the coefficients") {
        const auto [alpha, beta] = eval_floquet(f, 0.0);
        CHECK(alpha.real() == Approx(3.6).epsilon(1e-14));
        CHECK(alpha.imag() == Approx(0.0));
        CHECK(beta.real() == Approx(187.5).epsilon(1e-14));
    }
    SUBCASE("quarter period cancels symmetric sidebands") {
        const double t = 0.5 * std::numbers::pi / f.omega_a;
        const auto [alpha, beta] = eval_floquet(f, t);
        CHECK(alpha.real() == Approx(2.0).epsilon(1e-12));
        CHECK(std::abs(alpha.imag()) < 1e-12);  // a_m1 == a_1
    }
    SUBCASE("zero coefficients give zero fields") {
        FloquetAmplitudes z;
        z.a_m1 = z.a_0 = z.a_1 = z.b_m1 = z.b_0 = z.b_1 = 0.0;
        const auto [alpha, beta] = eval_floquet(z, 123.4);
        CHECK(std::abs(alpha) == 0.0);
        CHECK(std::abs(beta) == 0.0);
    }
    SUBCASE("exactly tau-periodic by construction") {
        const double tau = 2.0 * std::numbers::pi / f.omega_a;
        for (const double t : {0.0, 0.37, 12.9, 77.3}) {
            const auto [a1, b1] = eval_floquet(f, t);
            const auto [a2, b2] = eval_floquet(f, t + tau);
            CHECK(std::abs(a1 - a2) < 1e-11 * std::max(1.0, std::abs(a1)));
            CHECK(std::abs(b1 - b2) < 1e-11 * std::max(1.0, std::abs(b1)));
        }
    }
}

TEST_CASE("effective detuning") {
    SystemParams p = test::fig2_params();
    p.delta0 = 5.0;
    SUBCASE("zero displacement returns delta0") {
        CHECK(effective_detuning(p, 0.0) == Approx(5.0));
    }
    SUBCASE("real displacement shifts quadratically") {
        p.g = 1e-4;
        CHECK(effective_detuning(p, 100.0) == Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("purely imaginary displacement does not shift") {
        CHECK(effective_detuning(p, Complex(0.0, 123.0)) == Approx(5.0));
    }
}

TEST_CASE("periodicity check on synthetic trajectories") {
    const double omega = 2.0;
    const double tau = 2.0 * std::numbers::pi / omega;
    const double dt = tau / 314.0;  // grid-aligned period
    MeanFieldTrajectory traj;
    for (int i = 0; i <= 2000; ++i) {
        const double t = dt * i;
        traj.times.push_back(t);
        traj.alpha.push_back(std::exp(-kI * omega * t));
        traj.beta.push_back(1.0);
    }
    SUBCASE("constant signal is periodic for any tau") {
        MeanFieldTrajectory c = traj;
        for (auto& a : c.alpha)
            a = {0.3, -0.2};
        CHECK(check_periodicity(c, 1.234, 0.5, 1e-12).passed);
    }
    SUBCASE("pure tone passes at its own period") {
        CHECK(check_periodicity(traj, tau, 1.0, 1e-6).passed);
    }
    SUBCASE("pure tone fails at half period") {
        CHECK_FALSE(check_periodicity(traj, 0.5 * tau, 1.0, 1e-6).passed);
    }
    SUBCASE("insufficient span throws") {
        CHECK_THROWS_AS(check_periodicity(traj, tau, 19.0, 1e-6), InsufficientSpan);
    }
}

TEST_CASE("least-squares projection recovers exact ansatz coefficients") {
    FloquetAmplitudes f = test::fig2_floquet();
    f.a_m1 = {0.3, 0.1};
    f.a_1 = {0.6, -0.2};
    MeanFieldTrajectory traj;
    for (int i = 0; i <= 4000; ++i) {
        const double t = 0.01 * i;
        traj.times.push_back(t);
        const auto [a, b] = eval_floquet(f, t);
        traj.alpha.push_back(a);
        traj.beta.push_back(b);
    }
    const FloquetAmplitudes fit = fit_floquet_amplitudes(traj, f.omega_a, f.omega_b, 5.0);
    CHECK(std::abs(fit.a_m1 - f.a_m1) < 1e-8);
    CHECK(std::abs(fit.a_0 - f.a_0) < 1e-8);
    CHECK(std::abs(fit.a_1 - f.a_1) < 1e-8);
    CHECK(std::abs(fit.b_0 - f.b_0) < 1e-6);
}
