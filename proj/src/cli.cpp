#include "omsq/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "omsq/analysis.hpp"
#include "omsq/covariance.hpp"
#include "omsq/sweep.hpp"

namespace omsq {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct CliFlags {
    std::string config_path;
    std::string out_path;
    std::string mode;
    std::string a2c_sign;
    std::string sweep_axis;
    std::string sweep_range;
    double t_end = -1.0;
    double dt = -1.0;
    long stride = -1;
    long threads = -1;
    bool log_axis = false;
};

struct Invocation {
    RunConfig rc;
    Config echo;       ///< effective config after flag overrides
    std::string out;   ///< empty = stdout
    std::string command;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

void apply_flags(Config& cfg, const CliFlags& flags) {
    if (!flags.mode.empty())
        cfg.set("run.mode", flags.mode);
    if (!flags.a2c_sign.empty())
        cfg.set("run.a2c_sign", flags.a2c_sign);
    if (flags.t_end >= 0.0)
        cfg.set("run.t_end", csv_double(flags.t_end));
    if (flags.dt >= 0.0)
        cfg.set("run.dt", csv_double(flags.dt));
    if (flags.stride >= 0)
        cfg.set("run.stride", std::to_string(flags.stride));
    if (flags.threads >= 0)
        cfg.set("run.threads", std::to_string(flags.threads));
    if (!flags.sweep_axis.empty())
        cfg.set("sweep.axis", flags.sweep_axis);
    if (flags.log_axis)
        cfg.set("sweep.log", "true");
    if (!flags.sweep_range.empty()) {
        std::istringstream in(flags.sweep_range);
        std::string lo, hi, n;
        if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') || !std::getline(in, n))
            throw ConfigError("--sweep-range expects LO:HI:N");
        cfg.set("sweep.lo", lo);
        cfg.set("sweep.hi", hi);
        cfg.set("sweep.n", n);
    }
}

Invocation make_invocation(const CliFlags& flags, const std::string& command,
                           const std::map<std::string, std::string>& defaults = {}) {
    Config cfg;
    if (!flags.config_path.empty())
        cfg = Config::parse_file(flags.config_path);
    for (const auto& [k, v] : defaults)
        if (!cfg.has(k))
            cfg.set(k, v);
    apply_flags(cfg, flags);
    Invocation inv;
    inv.rc = make_run_config(cfg);
    inv.echo = to_config(inv.rc);
    inv.out = flags.out_path;
    inv.command = command;
    return inv;
}

json base_summary(const Invocation& inv) {
    json j;
    j["command"] = inv.command;
    j["versions"] = {{"omsq", kVersion},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)}};
    json cfg = json::object();
    for (const auto& [k, v] : inv.echo.entries())
        cfg[k] = v;
    j["config"] = cfg;
    return j;
}

void finish_summary(const Invocation& inv, json& j) {
    const auto elapsed = std::chrono::steady_clock::now() - inv.start;
    j["timing_seconds"] = std::chrono::duration<double>(elapsed).count();
}

void write_text(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output file: " + path);
    out << payload;
}

void write_csv_and_summary(const Invocation& inv, const std::string& csv, json summary) {
    finish_summary(inv, summary);
    if (inv.out.empty()) {
        std::cout << csv;
        return;
    }
    write_text(inv.out, csv);
    summary["outputs"] = {{"csv", inv.out}};
    write_text(inv.out + ".summary.json", summary.dump(2) + "\n");
}

void write_json_result(const Invocation& inv, json result) {
    json j = base_summary(inv);
    j["result"] = std::move(result);
    finish_summary(inv, j);
    write_text(inv.out, j.dump(2) + "\n");
}

// probes the drift over one modulation period and picks 200 steps per
// fastest entry period
double auto_covariance_dt(const DriftProvider& drift, double probe_period) {
    double fmax = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const double t = probe_period * static_cast<double>(i) / 8.0;
        fmax = std::max(fmax, drift(t).m.cwiseAbs().maxCoeff());
    }
    fmax = std::max(fmax, 1e-12);
    return 2.0 * std::numbers::pi / (200.0 * fmax);
}

DriftProvider make_drift_provider(const RunConfig& rc, const CouplingSet& c) {
    if (rc.mode == Mode::rwa) {
        const DriftMatrix m = drift_rwa(c, rc.params);
        return [m](double) { return m; };
    }
    return floquet_drift_provider(rc.params, rc.floquet);
}

CovarianceMatrix thermal_initial_state(const SystemParams& p) {
    CovarianceMatrix v0;
    v0.v.diagonal() << p.n_a + 0.5, p.n_a + 0.5, p.n_b + 0.5, p.n_b + 0.5;
    return v0;
}

double modulation_period(const RunConfig& rc) {
    if (rc.floquet.omega_a != rc.floquet.omega_b)
        throw ConfigError("limit-cycle analysis needs floquet.omega_a == floquet.omega_b");
    return 2.0 * std::numbers::pi / rc.floquet.omega_a;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_classical(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "classical");
    const RunConfig& rc = inv.rc;
    if (!rc.params.delta0.has_value())
        throw ConfigError("classical integration needs params.delta0");

    const double dt = rc.dt > 0.0 ? rc.dt : default_mean_field_dt(rc.params, rc.drive);
    const auto traj = integrate_mean_field(rc.params, rc.drive, rc.t_end, dt);

    std::string csv = "t,alpha_re,alpha_im,beta_re,beta_im\n";
    for (std::size_t i = 0; i < traj.times.size(); i += rc.stride) {
        csv += csv_double(traj.times[i]) + ',' + csv_double(traj.alpha[i].real()) + ',' +
               csv_double(traj.alpha[i].imag()) + ',' + csv_double(traj.beta[i].real()) +
               ',' + csv_double(traj.beta[i].imag()) + '\n';
    }

    json summary = base_summary(inv);
    const double tau = 2.0 * std::numbers::pi / rc.drive.omega;
    const double t_min = rc.t_end - 2.0 * tau;
    if (t_min > 0.0) {
        try {
            const PeriodicityReport rep = check_periodicity(traj, tau, t_min, 1e-3);
            summary["periodicity"] = {{"tau", tau},
                                      {"max_dev_alpha", rep.max_dev_alpha},
                                      {"max_dev_beta", rep.max_dev_beta},
                                      {"max_abs_alpha", rep.max_abs_alpha},
                                      {"max_abs_beta", rep.max_abs_beta},
                                      {"passed", rep.passed}};
        } catch (const InsufficientSpan&) {
        }
    }
    write_csv_and_summary(inv, csv, std::move(summary));
    return 0;
}

int cmd_evolve(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "evolve");
    const RunConfig& rc = inv.rc;
    const CouplingSet c = compute_couplings(rc.params, rc.floquet);
    const DriftProvider drift = make_drift_provider(rc, c);
    const double dt = rc.dt > 0.0 ? rc.dt : auto_covariance_dt(drift, modulation_period(rc));

    const auto samples =
        evolve_covariance(drift, noise_matrix(rc.params), thermal_initial_state(rc.params),
                          rc.t_end, dt, rc.stride);

    std::string csv = "t,v33,v44\n";
    for (const CovarianceMatrix& v : samples)
        csv += csv_double(v.t) + ',' + csv_double(v.v(2, 2)) + ',' + csv_double(v.v(3, 3)) + '\n';
    write_csv_and_summary(inv, csv, base_summary(inv));
    return 0;
}

int cmd_steady(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "steady");
    const RunConfig& rc = inv.rc;
    const CouplingSet c = compute_couplings(rc.params, rc.floquet);
    const StabilityReport rh = routh_hurwitz(c, rc.params);

    json result;
    result["mode"] = rc.mode == Mode::rwa ? "rwa" : "full";
    result["margins"] = rh.margins;
    result["stable"] = rh.stable;

    if (rc.mode == Mode::rwa) {
        const CovarianceMatrix v =
            steady_state_covariance(drift_rwa(c, rc.params), noise_matrix(rc.params));
        result["v33"] = v.v(2, 2);
        result["v44"] = v.v(3, 3);
        result["squeezing_db"] = squeezing_db(v.v(2, 2));
        result["e_n"] = logarithmic_negativity(v).e_n;
        if (c.r.has_value())
            result["occupancy"] = bogoliubov_occupancy(mechanical_block(v), *c.r);
        try {
            result["v_adiabatic"] = adiabatic_variance(c, rc.params, rc.a2c_sign);
        } catch (const Error&) {
            result["v_adiabatic"] = "undefined";
        }
        const SpectrumIntegral si = integrate_spectrum(c, rc.params, rc.quad);
        result["v_spectral"] = si.value;
        result["v_spectral_error"] = si.error_estimate;
        result["physicality_min_eigenvalue"] = min_physicality_eigenvalue(v);
    } else {
        const DriftProvider drift = make_drift_provider(rc, c);
        const double period = modulation_period(rc);
        const double dt = rc.dt > 0.0 ? rc.dt : auto_covariance_dt(drift, period);
        const double transient = std::max({500.0, 10.0 / rc.params.kappa, rc.t_end - period});
        const LimitCycleStats stats =
            limit_cycle_stats(drift, noise_matrix(rc.params), thermal_initial_state(rc.params),
                              transient, period, dt);
        result["period"] = period;
        result["v33_min"] = stats.v33_min;
        result["v33_max"] = stats.v33_max;
        result["v33_mean"] = stats.v33_mean;
        result["squeezing_db_min_v33"] = squeezing_db(stats.v33_min);
    }
    write_json_result(inv, std::move(result));
    return 0;
}

int cmd_wigner(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "wigner");
    const RunConfig& rc = inv.rc;
    const CouplingSet c = compute_couplings(rc.params, rc.floquet);

    Eigen::Matrix2d vb;
    if (rc.mode == Mode::rwa) {
        vb = mechanical_block(
            steady_state_covariance(drift_rwa(c, rc.params), noise_matrix(rc.params)));
    } else {
        const DriftProvider drift = make_drift_provider(rc, c);
        const double dt = rc.dt > 0.0 ? rc.dt : auto_covariance_dt(drift, modulation_period(rc));
        const auto samples = evolve_covariance(drift, noise_matrix(rc.params),
                                               thermal_initial_state(rc.params), rc.t_end, dt,
                                               std::numeric_limits<std::size_t>::max());
        vb = mechanical_block(samples.back());
    }

    const WignerGrid grid = make_wigner_grid(vb, rc.wigner.n, rc.wigner.n, rc.wigner.extent_sigmas);
    std::string csv = "q,p,w\n";
    for (std::size_t i = 0; i < grid.q_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.p_axis.size(); ++j)
            csv += csv_double(grid.q_axis[i]) + ',' + csv_double(grid.p_axis[j]) + ',' +
                   csv_double(grid.at(i, j)) + '\n';

    json summary = base_summary(inv);
    summary["wigner"] = {{"integral", grid.integral()},
                         {"v_qq", vb(0, 0)},
                         {"v_pp", vb(1, 1)},
                         {"v_qp", vb(0, 1)}};
    try {
        summary["wigner"]["principal_axis_angle"] = principal_axis_angle(vb);
    } catch (const IsotropicState&) {
        summary["wigner"]["principal_axis_angle"] = "undefined";
    }
    write_csv_and_summary(inv, csv, std::move(summary));
    return 0;
}

int cmd_spectrum(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "spectrum");
    const RunConfig& rc = inv.rc;
    const CouplingSet c = compute_couplings(rc.params, rc.floquet);
    const RealCouplings rcpl = c.as_real();

    const double window =
        rc.spectrum.window > 0.0
            ? rc.spectrum.window
            : 50.0 * std::max({rc.params.kappa, std::abs(rcpl.g_plus), rc.params.gamma,
                               std::abs(rcpl.gt_plus)});
    const auto omegas = sweep_grid(-window, window, rc.spectrum.n, false);
    const SpectrumTable table = sample_spectrum(c, rc.params, omegas);

    std::string csv = "omega,s_q\n";
    for (std::size_t i = 0; i < table.omegas.size(); ++i)
        csv += csv_double(table.omegas[i]) + ',' + csv_double(table.s_q[i]) + '\n';

    json summary = base_summary(inv);
    const SpectrumIntegral si = integrate_spectrum(c, rc.params, rc.quad);
    summary["integral"] = {{"value", si.value}, {"error_estimate", si.error_estimate}};
    write_csv_and_summary(inv, csv, std::move(summary));
    return 0;
}

int cmd_stability(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "stability");
    const RunConfig& rc = inv.rc;
    const CouplingSet c = compute_couplings(rc.params, rc.floquet);
    const StabilityReport rh = routh_hurwitz(c, rc.params);
    const double max_re = max_real_eigenvalue(drift_rwa(c, rc.params).m);

    json result;
    result["margins"] = rh.margins;
    result["stable"] = rh.stable;
    result["max_real_eigenvalue"] = max_re;
    result["eigenvalue_stable"] = max_re < 0.0;
    result["g1_over_g0"] =
        std::abs(c.g0) > 0.0 ? json(c.g1.real() / c.g0.real()) : json("undefined");
    write_json_result(inv, std::move(result));
    return 0;
}

int cmd_sweep_ratio(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "sweep-ratio", {{"sweep.axis", "bsum"}});
    const SweepResult sweep = run_ratio_sweep(inv.rc);

    std::ostringstream csv;
    write_sweep_csv(csv, sweep);
    json summary = base_summary(inv);
    try {
        const OptimalRatio opt = optimal_ratio(sweep);
        summary["optimal"] = {{"ratio", opt.ratio}, {"variance", opt.variance}};
    } catch (const NoStablePoints&) {
        summary["optimal"] = "undefined";
    }
    write_csv_and_summary(inv, csv.str(), std::move(summary));
    return 0;
}

int cmd_sweep_kappa(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "sweep-kappa",
                                     {{"sweep.axis", "kappa"},
                                      {"sweep.lo", "0.05"},
                                      {"sweep.hi", "1.6"},
                                      {"sweep.n", "9"},
                                      {"sweep.log", "true"}});
    const auto points = run_kappa_sweep(inv.rc);
    std::ostringstream csv;
    write_kappa_sweep_csv(csv, points);
    write_csv_and_summary(inv, csv.str(), base_summary(inv));
    return 0;
}

int cmd_sweep_nb(const CliFlags& flags) {
    Invocation inv = make_invocation(flags, "sweep-nb",
                                     {{"sweep.axis", "n_b"},
                                      {"sweep.lo", "1"},
                                      {"sweep.hi", "10000"},
                                      {"sweep.n", "25"},
                                      {"sweep.log", "true"}});
    const SweepResult sweep = run_nb_sweep(inv.rc);
    std::ostringstream csv;
    write_sweep_csv(csv, sweep);
    write_csv_and_summary(inv, csv.str(), base_summary(inv));
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Gaussian dynamics of a modulated, quadratically coupled "
                 "optomechanical system"};
    app.require_subcommand(1);

    CliFlags flags;
    app.add_option("--config", flags.config_path, "key=value configuration file");
    app.add_option("--out", flags.out_path, "output path (default: stdout)");
    app.add_option("--mode", flags.mode, "dynamics mode: rwa or full")
        ->check(CLI::IsMember({"rwa", "full"}));
    app.add_option("--t-end", flags.t_end, "integration end time (units 1/omega_m)");
    app.add_option("--dt", flags.dt, "integration step (0 = automatic)");
    app.add_option("--stride", flags.stride, "record every n-th sample");
    app.add_option("--threads", flags.threads, "sweep worker threads (0 = hardware)");
    app.add_option("--sweep-axis", flags.sweep_axis, "sweep axis name");
    app.add_option("--sweep-range", flags.sweep_range, "sweep range LO:HI:N");
    app.add_flag("--log-axis", flags.log_axis, "logarithmic sweep spacing");
    app.add_option("--a2c-sign", flags.a2c_sign,
                   "mechanical self-correlation sign: printed or positive")
        ->check(CLI::IsMember({"printed", "positive"}));

    std::map<std::string, int (*)(const CliFlags&)> handlers{
        {"classical", cmd_classical}, {"evolve", cmd_evolve},
        {"steady", cmd_steady},       {"wigner", cmd_wigner},
        {"spectrum", cmd_spectrum},   {"stability", cmd_stability},
        {"sweep-ratio", cmd_sweep_ratio}, {"sweep-kappa", cmd_sweep_kappa},
        {"sweep-nb", cmd_sweep_nb}};

    const std::map<std::string, std::string> descriptions{
        {"classical", "integrate the classical mean-field equations"},
        {"evolve", "propagate the covariance matrix in time"},
        {"steady", "steady-state observables (JSON)"},
        {"wigner", "phase-space Wigner grid of the mechanical mode"},
        {"spectrum", "position fluctuation spectrum and its integral"},
        {"stability", "stability margins and eigenvalue check (JSON)"},
        {"sweep-ratio", "sweep the sideband sum b_m1 + b_1"},
        {"sweep-kappa", "optimal ratio and best squeezing per cavity decay"},
        {"sweep-nb", "robustness sweep over the thermal occupancy"}};

    std::string chosen;
    for (const auto& [name, desc] : descriptions) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->fallthrough();  // global flags may follow the subcommand
        sub->callback([&chosen, name = name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        return handlers.at(chosen)(flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace omsq
