#include "omsq/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "omsq/analysis.hpp"
#include "omsq/covariance.hpp"

namespace omsq {

namespace {

std::string marker(const std::optional<double>& v, bool stable) {
    if (v.has_value())
        return csv_double(*v);
    return stable ? "undefined" : "unstable";
}

// bounded worker pool over point indices; results land by index, so the
// output order never depends on scheduling
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& work) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                work(i);
        });
    for (auto& th : pool)
        th.join();
}

FloquetAmplitudes with_bsum(const FloquetAmplitudes& base, double bsum, double b_ratio) {
    FloquetAmplitudes f = base;
    f.b_m1 = bsum / (1.0 + b_ratio);
    f.b_1 = bsum * b_ratio / (1.0 + b_ratio);
    return f;
}

} // namespace

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> sweep_grid(double lo, double hi, std::size_t n, bool log_axis) {
    std::vector<double> grid(n);
    if (n == 1) {
        grid[0] = lo;
        return grid;
    }
    if (log_axis) {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (std::size_t i = 0; i < n; ++i)
            grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                         static_cast<double>(n - 1));
    } else {
        for (std::size_t i = 0; i < n; ++i)
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return grid;
}

SweepPoint evaluate_point(const SystemParams& p, const FloquetAmplitudes& f,
                          const QuadratureOptions& quad, A2cSign sign,
                          double axis_value, bool with_spectral) {
    SweepPoint pt;
    pt.axis = axis_value;
    pt.kappa = p.kappa;

    const CouplingSet c = compute_couplings(p, f);
    if (std::abs(c.g0) > 0.0 && c.is_real())
        pt.ratio_g1_g0 = c.g1.real() / c.g0.real();

    const DriftMatrix m = drift_rwa(c, p);
    const StabilityReport rh = routh_hurwitz(c, p);
    pt.stable = rh.stable && max_real_eigenvalue(m.m) < 0.0;

    try {
        pt.v_adiabatic = adiabatic_variance(c, p, sign);
    } catch (const Error&) {
        // stays unset: degenerate or |G1| >= |G0|
    }

    if (!pt.stable)
        return pt;

    // per-point failures must never abort a sweep
    try {
        const NoiseMatrix d = noise_matrix(p);
        const CovarianceMatrix v = steady_state_covariance(m, d);
        pt.v_lyapunov = v.v(2, 2);
        if (with_spectral) {
            try {
                pt.v_spectral = integrate_spectrum(c, p, quad).value;
            } catch (const Error&) {
            }
        }
        if (c.r.has_value())
            pt.occupancy = bogoliubov_occupancy(mechanical_block(v), *c.r);
        try {
            pt.e_n = logarithmic_negativity(v).e_n;
        } catch (const Error&) {
        }
    } catch (const std::exception&) {
        // leave the remaining columns unset; the row is marked explicitly
    }
    return pt;
}

SweepResult run_ratio_sweep(const RunConfig& rc) {
    SweepResult res;
    res.axis_name = rc.sweep.axis.empty() ? "bsum" : rc.sweep.axis;
    if (res.axis_name != "bsum")
        throw ConfigError("ratio sweep supports only sweep.axis=bsum");

    const auto grid = sweep_grid(rc.sweep.lo, rc.sweep.hi, rc.sweep.n, rc.sweep.log_axis);
    res.points.resize(grid.size());
    parallel_for(grid.size(), rc.threads, [&](std::size_t i) {
        const FloquetAmplitudes f = with_bsum(rc.floquet, grid[i], rc.sweep.b_ratio);
        res.points[i] = evaluate_point(rc.params, f, rc.quad, rc.a2c_sign, grid[i],
                                       rc.sweep.spectral_column);
    });
    return res;
}

SweepResult run_nb_sweep(const RunConfig& rc) {
    SweepResult res;
    res.axis_name = rc.sweep.axis.empty() ? "n_b" : rc.sweep.axis;
    if (res.axis_name != "n_b")
        throw ConfigError("n_b sweep supports only sweep.axis=n_b");

    const auto grid = sweep_grid(rc.sweep.lo, rc.sweep.hi, rc.sweep.n, rc.sweep.log_axis);
    const std::size_t per_kappa = grid.size();
    res.points.resize(per_kappa * rc.sweep.kappa_set.size());
    parallel_for(res.points.size(), rc.threads, [&](std::size_t idx) {
        const std::size_t ik = idx / per_kappa;
        const std::size_t ig = idx % per_kappa;
        SystemParams p = rc.params;
        p.kappa = rc.sweep.kappa_set[ik];
        p.n_b = grid[ig];
        res.points[idx] = evaluate_point(p, rc.floquet, rc.quad, rc.a2c_sign, grid[ig],
                                         rc.sweep.spectral_column);
    });
    return res;
}

std::vector<KappaSweepPoint> run_kappa_sweep(const RunConfig& rc) {
    if (rc.sweep.axis != "kappa" && !rc.sweep.axis.empty())
        throw ConfigError("kappa sweep supports only sweep.axis=kappa");
    const auto kappas = sweep_grid(rc.sweep.lo, rc.sweep.hi, rc.sweep.n, rc.sweep.log_axis);

    // inner ratio grid reuses the published construction
    RunConfig inner = rc;
    inner.sweep.axis = "bsum";
    inner.sweep.lo = 0.0;
    inner.sweep.hi = 600.0;
    inner.sweep.n = 201;
    inner.sweep.log_axis = false;
    inner.sweep.spectral_column = false;

    std::vector<KappaSweepPoint> out(kappas.size());
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        out[i].kappa = kappas[i];
        RunConfig cfg = inner;
        cfg.params.kappa = kappas[i];
        const SweepResult sweep = run_ratio_sweep(cfg);
        try {
            const OptimalRatio opt = optimal_ratio(sweep);
            out[i].ratio_opt = opt.ratio;
            out[i].v_min = opt.variance;
        } catch (const NoStablePoints&) {
        }
    }
    return out;
}

OptimalRatio optimal_ratio(const SweepResult& sweep) {
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        const SweepPoint& p = sweep.points[i];
        if (p.stable && p.v_lyapunov.has_value() && p.ratio_g1_g0.has_value())
            usable.push_back(i);
    }
    if (usable.size() < 3)
        throw NoStablePoints("optimal_ratio needs at least 3 stable sweep points");

    std::size_t best = usable.front();
    for (const std::size_t i : usable)
        if (*sweep.points[i].v_lyapunov < *sweep.points[best].v_lyapunov)
            best = i;

    OptimalRatio opt{*sweep.points[best].ratio_g1_g0, *sweep.points[best].v_lyapunov};

    // parabolic refinement when the two grid neighbours are usable
    const auto pos = std::find(usable.begin(), usable.end(), best) - usable.begin();
    if (pos > 0 && static_cast<std::size_t>(pos) + 1 < usable.size()) {
        const std::size_t il = usable[pos - 1], ir = usable[pos + 1];
        if (il + 1 == best && best + 1 == ir) {
            const double x0 = *sweep.points[il].ratio_g1_g0;
            const double x1 = *sweep.points[best].ratio_g1_g0;
            const double x2 = *sweep.points[ir].ratio_g1_g0;
            const double y0 = *sweep.points[il].v_lyapunov;
            const double y1 = *sweep.points[best].v_lyapunov;
            const double y2 = *sweep.points[ir].v_lyapunov;
            const double denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
            if (denom != 0.0) {
                const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) -
                                   (x1 - x2) * (x1 - x2) * (y1 - y0);
                const double xv = x1 - 0.5 * num / denom;
                if (xv > x0 && xv < x2) {
                    opt.ratio = xv;
                    // vertex value of the interpolating parabola
                    const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
                    const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
                    const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
                    opt.variance = l0 * y0 + l1 * y1 + l2 * y2;
                }
            }
        }
    }
    return opt;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << sweep.axis_name
       << ",kappa,g1_over_g0,v_lyapunov,v_adiabatic,v_spectral,occupancy,e_n,stable\n";
    for (const SweepPoint& p : sweep.points) {
        os << csv_double(p.axis) << ',' << csv_double(p.kappa) << ','
           << marker(p.ratio_g1_g0, true) << ',' << marker(p.v_lyapunov, p.stable) << ','
           << marker(p.v_adiabatic, true) << ',' << marker(p.v_spectral, p.stable) << ','
           << marker(p.occupancy, p.stable) << ',' << marker(p.e_n, p.stable) << ','
           << (p.stable ? "stable" : "unstable") << '\n';
    }
}

void write_kappa_sweep_csv(std::ostream& os, const std::vector<KappaSweepPoint>& points) {
    os << "kappa,ratio_opt,v_min\n";
    for (const KappaSweepPoint& p : points)
        os << csv_double(p.kappa) << ',' << marker(p.ratio_opt, false) << ','
           << marker(p.v_min, false) << '\n';
}

} // namespace omsq
