#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "omsq/params.hpp"

using namespace omsq;
using doctest::Approx;

TEST_CASE("validate_params accepts the headline set") {
    const SystemParams p = test::fig2_params();
    CHECK_NOTHROW(validate_params(p));
}

TEST_CASE("validate_params rejects non-positive rates") {
    SystemParams p = test::fig2_params();
    p.kappa = 0.0;
    CHECK_THROWS_AS(validate_params(p), NonPositiveRate);
    p = test::fig2_params();
    p.gamma = -1e-6;
    CHECK_THROWS_AS(validate_params(p), NonPositiveRate);
}

TEST_CASE("validate_params rejects negative occupancies") {
    SystemParams p = test::fig2_params();
    p.n_b = -1.0;
    CHECK_THROWS_AS(validate_params(p), NegativeOccupancy);
    p = test::fig2_params();
    p.n_a = -0.5;
    CHECK_THROWS_AS(validate_params(p), NegativeOccupancy);
}

TEST_CASE("zero amplitudes give zero couplings") {
    SystemParams p = test::fig2_params();
    FloquetAmplitudes f;
    f.a_m1 = f.a_0 = f.a_1 = 0.0;
    f.b_m1 = f.b_0 = f.b_1 = 0.0;
    const CouplingSet c = compute_couplings(p, f);
    CHECK(std::abs(c.g0) == 0.0);
    CHECK(std::abs(c.g1) == 0.0);
    CHECK(std::abs(c.gt0) == 0.0);
    CHECK(std::abs(c.gt1) == 0.0);
    CHECK_FALSE(c.g_eff.has_value());
}

TEST_CASE("headline coupling values") {
    const CouplingSet c = compute_couplings(test::fig2_params(), test::fig2_floquet());
    CHECK(c.g0.real() == Approx(0.108).epsilon(1e-12));
    CHECK(c.g1.real() == Approx(0.067).epsilon(1e-12));
    CHECK(c.gt0.real() == Approx(1.056e-3).epsilon(1e-12));
    CHECK(c.gt1.real() == Approx(6.40e-4).epsilon(1e-12));
    CHECK(c.g_plus().real() == Approx(0.1750).epsilon(1e-12));
    CHECK(c.g_minus().real() == Approx(0.0410).epsilon(1e-12));
    CHECK(c.gt_plus().real() == Approx(1.696e-3).epsilon(1e-12));
    CHECK(c.gt_minus().real() == Approx(4.16e-4).epsilon(1e-12));

    REQUIRE(c.g_eff.has_value());
    REQUIRE(c.r.has_value());
    REQUIRE(c.h.has_value());
    CHECK(*c.g_eff == Approx(0.08470537173048708).epsilon(1e-12));
    CHECK(*c.r == Approx(0.7256069536096033).epsilon(1e-12));
    CHECK(*c.h == Approx(0.1435005).epsilon(1e-12));
    // published rounded values
    CHECK(*c.g_eff == Approx(0.08470).epsilon(1e-4));
    CHECK(*c.r == Approx(0.7256).epsilon(1e-4));
    CHECK(*c.h == Approx(0.143501).epsilon(1e-5));
}

TEST_CASE("derived identities hold whenever defined") {
    std::mt19937 rng(7);
    int defined = 0;
    for (int i = 0; i < 400; ++i) {
        const auto d = test::random_draw(rng);
        const CouplingSet c = compute_couplings(d.params, d.floquet);
        if (!c.r.has_value())
            continue;
        ++defined;
        const double g0 = c.g0.real(), g1 = c.g1.real();
        CHECK(std::tanh(*c.r) == Approx(g1 / g0).epsilon(1e-14));
        CHECK(*c.g_eff * *c.g_eff + g1 * g1 == Approx(g0 * g0).epsilon(1e-13));
        CHECK(c.g_plus().real() * c.g_minus().real() ==
              Approx(*c.g_eff * *c.g_eff).epsilon(1e-13));
    }
    CHECK(defined > 50);  // the draw box spans both regimes
}

TEST_CASE("G0 and G1 are linear in the b amplitudes at fixed a amplitudes") {
    const SystemParams p = test::fig2_params();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 50; ++i) {
        FloquetAmplitudes f = test::fig2_floquet();
        f.b_m1 = u(rng);
        f.b_0 = u(rng);
        f.b_1 = u(rng);
        FloquetAmplitudes f2 = f;
        const double s = 2.5;
        f2.b_m1 *= s;
        f2.b_0 *= s;
        f2.b_1 *= s;
        const CouplingSet c1 = compute_couplings(p, f);
        const CouplingSet c2 = compute_couplings(p, f2);
        // scaling all b's scales the b-linear parts of Eq for G0, G1
        CHECK(c2.g0.real() == Approx(s * c1.g0.real()).epsilon(1e-12));
        CHECK(c2.g1.real() == Approx(s * c1.g1.real()).epsilon(1e-12));
        // a-only couplings are untouched
        CHECK(c2.gt0.real() == Approx(c1.gt0.real()).epsilon(1e-14));
        CHECK(c2.gt1.real() == Approx(c1.gt1.real()).epsilon(1e-14));
    }
}

TEST_CASE("degenerate regime |G1| >= |G0| leaves g_eff, r, h unset") {
    const SystemParams p = test::fig2_params();
    // b_m1 + b_1 = 600 with ratio 2.5 lands exactly on G1 = G0
    FloquetAmplitudes f = test::fig2_floquet();
    f.b_m1 = 600.0 / 3.5;
    f.b_1 = 600.0 * 2.5 / 3.5;
    const CouplingSet c = compute_couplings(p, f);
    CHECK(c.g0.real() == Approx(c.g1.real()).epsilon(1e-12));
    CHECK_FALSE(c.g_eff.has_value());
    CHECK_FALSE(c.r.has_value());
    CHECK_FALSE(c.h.has_value());
}

TEST_CASE("complex amplitudes are evaluated literally") {
    SystemParams p = test::fig2_params();
    FloquetAmplitudes f;
    f.a_m1 = {0.5, 0.2};
    f.a_0 = {1.0, -0.3};
    f.a_1 = {0.1, 0.4};
    f.b_m1 = {10.0, 5.0};
    f.b_0 = {50.0, 0.0};
    f.b_1 = {20.0, -8.0};
    const CouplingSet c = compute_couplings(p, f);
    const Complex g0 = 2.0 * p.g * (2.0 * f.a_0 * f.b_0 + (f.a_m1 + f.a_1) * (f.b_m1 + f.b_1));
    const Complex gt1 = 2.0 * p.g * f.a_0 * (f.a_m1 + f.a_1);
    CHECK(std::abs(c.g0 - g0) < 1e-15);
    CHECK(std::abs(c.gt1 - gt1) < 1e-15);
    CHECK_FALSE(c.is_real());
    CHECK_FALSE(c.r.has_value());
    CHECK_THROWS_AS(c.as_real(), std::invalid_argument);
}
