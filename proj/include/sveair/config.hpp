#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sveair/parameters.hpp"

namespace sveair {

/// Malformed or invalid scenario file. `line()` is 0 for validation errors,
/// `key()` is empty for pure syntax errors.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::size_t line, std::string key)
        : std::runtime_error(what), line_(line), key_(std::move(key)) {}
    std::size_t line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

/// Names of the age profiles a config may set, as a constant (`params.k = 0.25`)
/// or from a two-column CSV (`params.k_file = k.csv`).
inline constexpr const char* kProfileNames[] = {"beta_A", "beta_I", "k",       "q",
                                                "xi",     "chi",    "gamma_A", "gamma_I"};

struct ScenarioConfig {
    /// "table2-c1", "table2-c2", or empty (then every parameter must be given).
    std::string builtin;

    // Scalar overrides on top of the built-in set.
    std::optional<double> N0, mu, p, epsilon, zeta;
    std::map<std::string, double> profile_constants;
    std::map<std::string, std::filesystem::path> profile_files;

    double h = 0.5;
    double theta_max = 32400.0;

    double t_max = 1500.0;
    double sample_every = 1.0;
    std::vector<double> snapshot_times;

    double s0 = 2e7;
    double v0 = 2e7;
    std::vector<double> d_values = {10.0, 1e4, 1e6, 4e6, 1e7};
    double band_start = 20.0 * 360.0;
    double band_end = 50.0 * 360.0;

    bool run_oracle = false;
    bool run_lyapunov = false;
    bool r0_only = false;
    double oracle_t_max = 200.0;
    /// Relative tail-weight cutoff for the endemic functional (see EndemicOptions).
    double lyapunov_weight_cutoff = 2.220446049250313e-16;

    std::filesystem::path output_dir = "out";
};

/// Parses `key = value` lines; `#` starts a comment. Relative file paths are
/// resolved against the directory of the config file.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Same, from text; relative paths resolve against `base_dir`.
ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});

/// Throws ConfigError naming the first offending key.
void validate_config(const ScenarioConfig& cfg);

/// Builds the grid and parameter set described by the config.
ParameterSet build_parameters(const ScenarioConfig& cfg);

}  // namespace sveair
