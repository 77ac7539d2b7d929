#include "omsq/covariance.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "omsq/classical.hpp"

namespace omsq {

namespace {

Eigen::Matrix4d lyapunov_rhs(const Eigen::Matrix4d& m, const Eigen::Matrix4d& v,
                             const Eigen::Matrix4d& d) {
    return m * v + v * m.transpose() + d;
}

// 50 steps per 2*pi/max|entry| resolution rule
void check_step(double dt, const Eigen::Matrix4d& m) {
    const double fmax = m.cwiseAbs().maxCoeff();
    if (fmax > 0.0 && dt > 2.0 * std::numbers::pi / (50.0 * fmax))
        throw StepTooLarge("dt does not resolve the fastest drift entry with >= 50 steps");
}

} // namespace

DriftMatrix drift_rwa(const CouplingSet& c, const SystemParams& p) {
    const RealCouplings rc = c.as_real();
    DriftMatrix dm;
    dm.time_dependent = false;
    dm.m << -p.kappa / 2, 0, 0, -rc.g_minus,
            0, -p.kappa / 2, rc.g_plus, 0,
            0, -rc.g_minus, -p.gamma / 2, -rc.gt_minus,
            rc.g_plus, 0, rc.gt_plus, -p.gamma / 2;
    if (!dm.m.allFinite())
        throw std::invalid_argument("drift entries must be finite");
    return dm;
}

DriftMatrix drift_full(const SystemParams& p, Complex alpha, Complex beta) {
    if (!p.delta.has_value())
        throw std::invalid_argument("drift_full requires the effective detuning");
    const double delta = *p.delta;
    const double ar = alpha.real(), ai = alpha.imag();
    const double br = beta.real();
    const double c = 8.0 * p.g * br;
    DriftMatrix dm;
    dm.time_dependent = true;
    dm.m << -p.kappa / 2, delta, -c * ai, 0,
            -delta, -p.kappa / 2, c * ar, 0,
            0, 0, -p.gamma / 2, p.omega_m,
            c * ar, c * ai, -p.omega_m + 4.0 * p.g * std::norm(alpha), -p.gamma / 2;
    return dm;
}

DriftProvider floquet_drift_provider(const SystemParams& p, const FloquetAmplitudes& f) {
    return [p, f](double t) {
        const auto [alpha, beta] = eval_floquet(f, t);
        return drift_full(p, alpha, beta);
    };
}

NoiseMatrix noise_matrix(const SystemParams& p) {
    NoiseMatrix nm;
    const double dc = p.kappa * (p.n_a + 0.5);
    const double dm = p.gamma * (p.n_b + 0.5);
    nm.d.diagonal() << dc, dc, dm, dm;
    return nm;
}

std::vector<CovarianceMatrix> evolve_covariance(const DriftProvider& drift,
                                                const NoiseMatrix& d,
                                                const CovarianceMatrix& v0,
                                                double t_end, double dt,
                                                std::size_t stride) {
    if (!(dt > 0.0))
        throw StepTooLarge("dt must be > 0");
    if (stride == 0)
        stride = 1;
    const auto n = static_cast<std::size_t>(std::ceil((t_end - v0.t) / dt - 1e-9));

    std::vector<CovarianceMatrix> out;
    out.reserve(n / stride + 2);

    Eigen::Matrix4d v = 0.5 * (v0.v + v0.v.transpose());
    double t = v0.t;
    for (std::size_t i = 0; i <= n; ++i) {
        if (i % stride == 0 || i == n)
            out.push_back({v, t});
        if (i == n)
            break;
        const Eigen::Matrix4d m1 = drift(t).m;
        check_step(dt, m1);
        const Eigen::Matrix4d mh = drift(t + 0.5 * dt).m;
        const Eigen::Matrix4d m2 = drift(t + dt).m;
        const Eigen::Matrix4d k1 = lyapunov_rhs(m1, v, d.d);
        const Eigen::Matrix4d k2 = lyapunov_rhs(mh, v + 0.5 * dt * k1, d.d);
        const Eigen::Matrix4d k3 = lyapunov_rhs(mh, v + 0.5 * dt * k2, d.d);
        const Eigen::Matrix4d k4 = lyapunov_rhs(m2, v + dt * k3, d.d);
        v += dt / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
        v = 0.5 * (v + v.transpose()).eval();
        t = v0.t + dt * static_cast<double>(i + 1);
        if (!v.allFinite())
            throw NonFiniteState("covariance evolution diverged (unstable drift?)");
    }
    return out;
}

CovarianceMatrix steady_state_covariance(const DriftMatrix& m, const NoiseMatrix& d) {
    if (m.time_dependent)
        throw std::invalid_argument("steady_state_covariance needs a constant drift");
    if (max_real_eigenvalue(m.m) >= 0.0)
        throw UnstableDrift("drift matrix is not Hurwitz-stable");

    // vec(M V + V M^T) = (I (x) M + M (x) I) vec(V), column-major stacking
    Eigen::Matrix<double, 16, 16> a = Eigen::Matrix<double, 16, 16>::Zero();
    for (int blk = 0; blk < 4; ++blk)
        a.block<4, 4>(4 * blk, 4 * blk) = m.m;  // I (x) M
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                a(4 * i + k, 4 * j + k) += m.m(i, j);  // M (x) I

    Eigen::Matrix<double, 16, 1> rhs;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            rhs(4 * j + i) = -d.d(i, j);

    const Eigen::PartialPivLU<Eigen::Matrix<double, 16, 16>> lu(a);
    Eigen::Matrix<double, 16, 1> x = lu.solve(rhs);
    x += lu.solve(rhs - a * x);  // one refinement step
    Eigen::Matrix4d v;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            v(i, j) = x(4 * j + i);
    v = 0.5 * (v + v.transpose()).eval();

    // Residual gate: the spec bound, or the double-precision floor
    // eps * ||M|| * ||V|| when V dwarfs D (near-degenerate drift).
    const double res = (m.m * v + v * m.m.transpose() + d.d).norm();
    const double eps = std::numeric_limits<double>::epsilon();
    const double bound = std::max(1e-10 * d.d.norm(), 64.0 * eps * m.m.norm() * v.norm());
    if (res > bound)
        throw Error("Lyapunov solve residual exceeds its bound");
    return {v, 0.0};
}

StabilityReport routh_hurwitz(const CouplingSet& c, const SystemParams& p) {
    const RealCouplings rc = c.as_real();
    const double k = p.kappa, y = p.gamma;
    const double gg = rc.g_minus * rc.g_plus;
    const double tt = rc.gt_minus * rc.gt_plus;
    StabilityReport rep;
    rep.margins[0] = y + k;
    rep.margins[1] = 0.25 * (y * y + 4.0 * y * k + k * k) + 2.0 * gg + tt;
    rep.margins[2] = tt * k + (0.25 * y * k + gg) * (y + k);
    rep.margins[3] = k * k / 16.0 * (4.0 * tt + y * y) + gg * gg + 0.5 * y * k * gg;
    rep.stable = rep.margins[0] > 0.0 && rep.margins[1] > 0.0 &&
                 rep.margins[2] > 0.0 && rep.margins[3] > 0.0;
    return rep;
}

double max_real_eigenvalue(const Eigen::Matrix4d& m) {
    Eigen::EigenSolver<Eigen::Matrix4d> es(m, false);
    return es.eigenvalues().real().maxCoeff();
}

LimitCycleStats limit_cycle_stats(const DriftProvider& drift, const NoiseMatrix& d,
                                  const CovarianceMatrix& v0, double t_transient,
                                  double period, double dt) {
    if (!(period > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("limit_cycle_stats needs positive period and dt");
    const auto steps_per_period = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::llround(period / dt)));
    const double dt_aligned = period / static_cast<double>(steps_per_period);

    // burn through the transient without recording
    auto tail = evolve_covariance(drift, d, v0, v0.t + t_transient, dt_aligned,
                                  std::numeric_limits<std::size_t>::max());
    CovarianceMatrix state = tail.back();
    auto cycle = evolve_covariance(drift, d, state, state.t + period, dt_aligned, 1);

    LimitCycleStats stats;
    stats.cycle = std::move(cycle);
    stats.v33_min = std::numeric_limits<double>::infinity();
    stats.v33_max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < stats.cycle.size(); ++i) {  // endpoint repeats phase 0
        const double v33 = stats.cycle[i].v(2, 2);
        stats.v33_min = std::min(stats.v33_min, v33);
        stats.v33_max = std::max(stats.v33_max, v33);
        sum += v33;
        ++count;
    }
    stats.v33_mean = sum / static_cast<double>(count);
    return stats;
}

} // namespace omsq
