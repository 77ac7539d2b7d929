#include "omsq/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace omsq {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size())
            throw ConfigError("trailing characters in value for " + key + ": '" + raw + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number for " + key + ": '" + raw + "'");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0)
        return format_double(z.real());
    return format_double(z.real()) + "," + format_double(z.imag());
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "params.delta0", "params.delta", "params.omega_m", "params.g", "params.kappa",
        "params.gamma", "params.n_a", "params.n_b", "params.eta",
        "floquet.a_m1", "floquet.a_0", "floquet.a_1",
        "floquet.b_m1", "floquet.b_0", "floquet.b_1",
        "floquet.omega_a", "floquet.omega_b",
        "drive.eps_m1", "drive.eps_0", "drive.eps_1", "drive.omega",
        "run.mode", "run.t_end", "run.dt", "run.stride", "run.a2c_sign", "run.threads",
        "sweep.axis", "sweep.lo", "sweep.hi", "sweep.n", "sweep.log",
        "sweep.b_ratio", "sweep.kappa_set",
        "wigner.n", "wigner.extent_sigmas",
        "spectrum.n", "spectrum.window",
        "quad.rel_tol", "quad.max_depth",
    };
    return keys;
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("missing '=' on line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key on line " + std::to_string(lineno));
        if (!known_keys().count(key))
            throw ConfigError("unknown config key: " + key);
        cfg.values_[key] = value;
    }
    return cfg;
}

std::string Config::serialize() const {
    std::string out;
    for (const auto& [k, v] : values_) {  // std::map keeps keys sorted
        out += k;
        out += "=";
        out += v;
        out += "\n";
    }
    return out;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
}

long Config::get_long(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const double v = parse_double(key, it->second);
    const long l = std::lround(v);
    if (static_cast<double>(l) != v)
        throw ConfigError(key + " must be an integer");
    return l;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const std::string v = it->second;
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw ConfigError(key + " must be a boolean, got '" + v + "'");
}

Complex Config::get_complex(const std::string& key, Complex fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const std::string& v = it->second;
    const auto comma = v.find(',');
    if (comma == std::string::npos)
        return {parse_double(key, v), 0.0};
    return {parse_double(key, trim(v.substr(0, comma))),
            parse_double(key, trim(v.substr(comma + 1)))};
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    std::vector<double> out;
    std::string item;
    std::istringstream in(it->second);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(parse_double(key, item));
    }
    if (out.empty())
        throw ConfigError(key + " must contain at least one value");
    return out;
}

RunConfig make_run_config(const Config& cfg) {
    RunConfig rc;

    if (cfg.has("params.omega_m") && cfg.get_double("params.omega_m", 1.0) != 1.0)
        throw ConfigError("params.omega_m is the unit of every rate and must stay 1");
    if (cfg.has("params.delta0"))
        rc.params.delta0 = cfg.get_double("params.delta0", 0.0);
    if (cfg.has("params.delta"))
        rc.params.delta = cfg.get_double("params.delta", 1.0);
    rc.params.g = cfg.get_double("params.g", rc.params.g);
    rc.params.kappa = cfg.get_double("params.kappa", rc.params.kappa);
    rc.params.gamma = cfg.get_double("params.gamma", rc.params.gamma);
    rc.params.n_a = cfg.get_double("params.n_a", rc.params.n_a);
    rc.params.n_b = cfg.get_double("params.n_b", rc.params.n_b);
    rc.params.eta = cfg.get_double("params.eta", rc.params.eta);

    rc.floquet.a_m1 = cfg.get_complex("floquet.a_m1", rc.floquet.a_m1);
    rc.floquet.a_0 = cfg.get_complex("floquet.a_0", rc.floquet.a_0);
    rc.floquet.a_1 = cfg.get_complex("floquet.a_1", rc.floquet.a_1);
    rc.floquet.b_m1 = cfg.get_complex("floquet.b_m1", rc.floquet.b_m1);
    rc.floquet.b_0 = cfg.get_complex("floquet.b_0", rc.floquet.b_0);
    rc.floquet.b_1 = cfg.get_complex("floquet.b_1", rc.floquet.b_1);
    rc.floquet.omega_a = cfg.get_double("floquet.omega_a", rc.floquet.omega_a);
    rc.floquet.omega_b = cfg.get_double("floquet.omega_b", rc.floquet.omega_b);
    if (!(rc.floquet.omega_a > 0.0) || !(rc.floquet.omega_b > 0.0))
        throw ConfigError("floquet modulation frequencies must be > 0");

    // effective detuning from the bare one and the static displacement b_0,
    // unless given explicitly
    if (cfg.has("params.delta0") && !cfg.has("params.delta")) {
        const double disp = 2.0 * rc.floquet.b_0.real();
        rc.params.delta = *rc.params.delta0 - rc.params.g * disp * disp;
    }

    rc.drive.eps_m1 = cfg.get_complex("drive.eps_m1", rc.drive.eps_m1);
    rc.drive.eps_0 = cfg.get_complex("drive.eps_0", rc.drive.eps_0);
    rc.drive.eps_1 = cfg.get_complex("drive.eps_1", rc.drive.eps_1);
    rc.drive.omega = cfg.get_double("drive.omega", rc.drive.omega);
    if (!(rc.drive.omega > 0.0))
        throw ConfigError("drive.omega must be > 0");

    const std::string mode = cfg.get_string("run.mode", "rwa");
    if (mode == "rwa")
        rc.mode = Mode::rwa;
    else if (mode == "full")
        rc.mode = Mode::full;
    else
        throw ConfigError("run.mode must be 'rwa' or 'full', got '" + mode + "'");

    rc.t_end = cfg.get_double("run.t_end", rc.t_end);
    rc.dt = cfg.get_double("run.dt", rc.dt);
    if (rc.t_end <= 0.0)
        throw ConfigError("run.t_end must be > 0");
    if (rc.dt < 0.0)
        throw ConfigError("run.dt must be >= 0 (0 selects the automatic step)");
    const long stride = cfg.get_long("run.stride", static_cast<long>(rc.stride));
    if (stride < 1)
        throw ConfigError("run.stride must be >= 1");
    rc.stride = static_cast<std::size_t>(stride);

    const std::string sign = cfg.get_string("run.a2c_sign", "printed");
    if (sign == "printed")
        rc.a2c_sign = A2cSign::printed;
    else if (sign == "positive")
        rc.a2c_sign = A2cSign::positive;
    else
        throw ConfigError("run.a2c_sign must be 'printed' or 'positive'");

    const long threads = cfg.get_long("run.threads", 0);
    if (threads < 0)
        throw ConfigError("run.threads must be >= 0");
    rc.threads = static_cast<std::size_t>(threads);

    rc.sweep.axis = cfg.get_string("sweep.axis", rc.sweep.axis);
    rc.sweep.lo = cfg.get_double("sweep.lo", rc.sweep.lo);
    rc.sweep.hi = cfg.get_double("sweep.hi", rc.sweep.hi);
    const long n = cfg.get_long("sweep.n", static_cast<long>(rc.sweep.n));
    if (n < 1)
        throw ConfigError("sweep.n must be >= 1");
    rc.sweep.n = static_cast<std::size_t>(n);
    if (!(rc.sweep.hi >= rc.sweep.lo))
        throw ConfigError("sweep range must be ordered: lo <= hi");
    rc.sweep.log_axis = cfg.get_bool("sweep.log", rc.sweep.log_axis);
    if (rc.sweep.log_axis && rc.sweep.lo <= 0.0)
        throw ConfigError("log-spaced sweeps need lo > 0");
    rc.sweep.b_ratio = cfg.get_double("sweep.b_ratio", rc.sweep.b_ratio);
    if (!(rc.sweep.b_ratio > 0.0))
        throw ConfigError("sweep.b_ratio must be > 0");
    rc.sweep.kappa_set = cfg.get_double_list("sweep.kappa_set", rc.sweep.kappa_set);
    for (const double k : rc.sweep.kappa_set)
        if (!(k > 0.0))
            throw ConfigError("sweep.kappa_set entries must be > 0");

    const long wn = cfg.get_long("wigner.n", static_cast<long>(rc.wigner.n));
    if (wn < 2)
        throw ConfigError("wigner.n must be >= 2");
    rc.wigner.n = static_cast<std::size_t>(wn);
    rc.wigner.extent_sigmas = cfg.get_double("wigner.extent_sigmas", rc.wigner.extent_sigmas);
    if (!(rc.wigner.extent_sigmas > 0.0))
        throw ConfigError("wigner.extent_sigmas must be > 0");

    const long sn = cfg.get_long("spectrum.n", static_cast<long>(rc.spectrum.n));
    if (sn < 2)
        throw ConfigError("spectrum.n must be >= 2");
    rc.spectrum.n = static_cast<std::size_t>(sn);
    rc.spectrum.window = cfg.get_double("spectrum.window", rc.spectrum.window);
    if (rc.spectrum.window < 0.0)
        throw ConfigError("spectrum.window must be >= 0 (0 selects the automatic window)");

    rc.quad.rel_tol = cfg.get_double("quad.rel_tol", rc.quad.rel_tol);
    if (!(rc.quad.rel_tol > 0.0))
        throw ConfigError("quad.rel_tol must be > 0");
    const long depth = cfg.get_long("quad.max_depth", rc.quad.max_depth);
    if (depth < 1)
        throw ConfigError("quad.max_depth must be >= 1");
    rc.quad.max_depth = static_cast<int>(depth);
    if (rc.spectrum.window > 0.0)
        rc.quad.window = rc.spectrum.window;

    try {
        validate_params(rc.params);
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid parameters: ") + e.what());
    }
    return rc;
}

Config to_config(const RunConfig& rc) {
    Config cfg;
    if (rc.params.delta0)
        cfg.set("params.delta0", format_double(*rc.params.delta0));
    if (rc.params.delta)
        cfg.set("params.delta", format_double(*rc.params.delta));
    cfg.set("params.omega_m", format_double(rc.params.omega_m));
    cfg.set("params.g", format_double(rc.params.g));
    cfg.set("params.kappa", format_double(rc.params.kappa));
    cfg.set("params.gamma", format_double(rc.params.gamma));
    cfg.set("params.n_a", format_double(rc.params.n_a));
    cfg.set("params.n_b", format_double(rc.params.n_b));
    cfg.set("params.eta", format_double(rc.params.eta));

    cfg.set("floquet.a_m1", format_complex(rc.floquet.a_m1));
    cfg.set("floquet.a_0", format_complex(rc.floquet.a_0));
    cfg.set("floquet.a_1", format_complex(rc.floquet.a_1));
    cfg.set("floquet.b_m1", format_complex(rc.floquet.b_m1));
    cfg.set("floquet.b_0", format_complex(rc.floquet.b_0));
    cfg.set("floquet.b_1", format_complex(rc.floquet.b_1));
    cfg.set("floquet.omega_a", format_double(rc.floquet.omega_a));
    cfg.set("floquet.omega_b", format_double(rc.floquet.omega_b));

    cfg.set("drive.eps_m1", format_complex(rc.drive.eps_m1));
    cfg.set("drive.eps_0", format_complex(rc.drive.eps_0));
    cfg.set("drive.eps_1", format_complex(rc.drive.eps_1));
    cfg.set("drive.omega", format_double(rc.drive.omega));

    cfg.set("run.mode", rc.mode == Mode::rwa ? "rwa" : "full");
    cfg.set("run.t_end", format_double(rc.t_end));
    cfg.set("run.dt", format_double(rc.dt));
    cfg.set("run.stride", std::to_string(rc.stride));
    cfg.set("run.a2c_sign", rc.a2c_sign == A2cSign::printed ? "printed" : "positive");
    cfg.set("run.threads", std::to_string(rc.threads));

    if (!rc.sweep.axis.empty())
        cfg.set("sweep.axis", rc.sweep.axis);
    cfg.set("sweep.lo", format_double(rc.sweep.lo));
    cfg.set("sweep.hi", format_double(rc.sweep.hi));
    cfg.set("sweep.n", std::to_string(rc.sweep.n));
    cfg.set("sweep.log", rc.sweep.log_axis ? "true" : "false");
    cfg.set("sweep.b_ratio", format_double(rc.sweep.b_ratio));
    std::string ks;
    for (const double k : rc.sweep.kappa_set) {
        if (!ks.empty())
            ks += ",";
        ks += format_double(k);
    }
    cfg.set("sweep.kappa_set", ks);

    cfg.set("wigner.n", std::to_string(rc.wigner.n));
    cfg.set("wigner.extent_sigmas", format_double(rc.wigner.extent_sigmas));
    cfg.set("spectrum.n", std::to_string(rc.spectrum.n));
    cfg.set("spectrum.window", format_double(rc.spectrum.window));
    cfg.set("quad.rel_tol", format_double(rc.quad.rel_tol));
    cfg.set("quad.max_depth", std::to_string(rc.quad.max_depth));
    return cfg;
}

} // namespace omsq
