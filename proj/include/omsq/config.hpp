#pragma once

#include <map>
#include <string>
#include <vector>

#include "omsq/bogoliubov.hpp"
#include "omsq/classical.hpp"
#include "omsq/params.hpp"
#include "omsq/spectrum.hpp"

namespace omsq {

/// Flat key=value store with section-prefixed keys (params.kappa=0.1),
/// '#' comments and stable serialization. Values are kept verbatim, so
/// parse -> serialize -> parse is idempotent.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    std::string serialize() const;

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    Complex get_complex(const std::string& key, Complex fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

enum class Mode { rwa, full };

struct SweepSpec {
    std::string axis;               ///< "bsum", "n_b" or "kappa"
    double lo = 0.0;
    double hi = 600.0;
    std::size_t n = 200;
    bool log_axis = false;
    double b_ratio = 2.5;           ///< b_1 / b_m1 held fixed along ratio sweeps
    std::vector<double> kappa_set{0.1, 1.0};
    bool spectral_column = true;    ///< inner optimizer sweeps drop it for speed
};

struct WignerSpec {
    std::size_t n = 201;
    double extent_sigmas = 5.0;
};

struct SpectrumSpec {
    std::size_t n = 2001;
    double window = 0.0;  ///< 0 = automatic
};

/// Everything one CLI run needs. Defaults reproduce the headline parameter
/// set (kappa = 0.1, n_b = 10, sidebands 0.8/2.0/0.8 and 25/100/62.5).
struct RunConfig {
    SystemParams params;
    FloquetAmplitudes floquet;
    DriveModulation drive;
    Mode mode = Mode::rwa;
    double t_end = 1000.0;
    double dt = 0.0;       ///< 0 = automatic
    std::size_t stride = 10;
    A2cSign a2c_sign = A2cSign::printed;
    SweepSpec sweep;
    WignerSpec wigner;
    QuadratureOptions quad;
    std::size_t threads = 0;  ///< 0 = hardware concurrency
    SpectrumSpec spectrum;
};

/// Builds a RunConfig from a parsed Config; unknown keys and invalid values
/// raise ConfigError (so do attempts to set params.omega_m != 1).
RunConfig make_run_config(const Config& cfg);

/// The RunConfig rendered back into canonical Config form.
Config to_config(const RunConfig& rc);

} // namespace omsq
