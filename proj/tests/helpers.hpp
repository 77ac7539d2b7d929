#pragma once

#include <random>

#include "omsq/params.hpp"

namespace omsq::test {

/// Headline parameter set used throughout: kappa = 0.1, gamma = 1e-6,
/// g = 1e-4, n_a = 0, n_b = 10, sidebands (0.8, 2.0, 0.8) / (25, 100, 62.5).
inline SystemParams fig2_params() {
    SystemParams p;
    p.delta = 1.0;
    p.g = 1e-4;
    p.kappa = 0.1;
    p.gamma = 1e-6;
    p.n_a = 0.0;
    p.n_b = 10.0;
    return p;
}

inline FloquetAmplitudes fig2_floquet() {
    return FloquetAmplitudes{};  // defaults are the headline sidebands
}

/// Physically constructed random parameter draw (amplitudes, rates), spanning
/// stable and unstable regions.
struct RandomDraw {
    SystemParams params;
    FloquetAmplitudes floquet;
};

inline RandomDraw random_draw(std::mt19937& rng) {
    std::uniform_real_distribution<double> ua(-3.0, 3.0);
    std::uniform_real_distribution<double> ub(-300.0, 300.0);
    std::uniform_real_distribution<double> ulog(0.0, 1.0);
    RandomDraw d;
    d.params.g = std::pow(10.0, -5.0 + 3.0 * ulog(rng));
    d.params.kappa = std::pow(10.0, -3.0 + 3.5 * ulog(rng));
    d.params.gamma = std::pow(10.0, -8.0 + 7.0 * ulog(rng));
    d.floquet.a_m1 = ua(rng);
    d.floquet.a_0 = ua(rng);
    d.floquet.a_1 = ua(rng);
    d.floquet.b_m1 = ub(rng);
    d.floquet.b_0 = ub(rng);
    d.floquet.b_1 = ub(rng);
    return d;
}

} // namespace omsq::test
