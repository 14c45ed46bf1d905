#include "sveair/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace sveair {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(std::size_t line, const std::string& key, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg, line, key);
}

[[noreturn]] void fail_key(const std::string& key, const std::string& msg) {
    throw ConfigError("config key " + key + ": " + msg, 0, key);
}

double to_number(const std::string& v, std::size_t line, const std::string& key) {
    double x = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, x);
    if (v.empty() || res.ec != std::errc() || res.ptr != last) {
        fail_at(line, key, "'" + v + "' is not a number");
    }
    return x;
}

std::vector<double> to_list(const std::string& v, std::size_t line, const std::string& key) {
    std::vector<double> out;
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(to_number(trim(item), line, key));
    return out;
}

bool to_bool(const std::string& v, std::size_t line, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail_at(line, key, "'" + v + "' is not a boolean");
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, std::size_t)>;

std::map<std::string, Setter> setters(const std::filesystem::path& base_dir) {
    std::map<std::string, Setter> m;
    auto num = [](double ScenarioConfig::*field, const char* key) {
        return Setter([field, key](ScenarioConfig& c, const std::string& v, std::size_t line) {
            c.*field = to_number(v, line, key);
        });
    };
    auto opt = [](std::optional<double> ScenarioConfig::*field, const char* key) {
        return Setter([field, key](ScenarioConfig& c, const std::string& v, std::size_t line) {
            c.*field = to_number(v, line, key);
        });
    };
    auto flag = [](bool ScenarioConfig::*field, const char* key) {
        return Setter([field, key](ScenarioConfig& c, const std::string& v, std::size_t line) {
            c.*field = to_bool(v, line, key);
        });
    };

    m["params.builtin"] = [](ScenarioConfig& c, const std::string& v, std::size_t line) {
        if (v != "table2-c1" && v != "table2-c2") {
            fail_at(line, "params.builtin", "unknown built-in '" + v +
                                                "' (expected table2-c1 or table2-c2)");
        }
        c.builtin = v;
    };
    m["params.N0"] = opt(&ScenarioConfig::N0, "params.N0");
    m["params.mu"] = opt(&ScenarioConfig::mu, "params.mu");
    m["params.p"] = opt(&ScenarioConfig::p, "params.p");
    m["params.epsilon"] = opt(&ScenarioConfig::epsilon, "params.epsilon");
    m["params.zeta"] = opt(&ScenarioConfig::zeta, "params.zeta");
    for (const char* name : kProfileNames) {
        const std::string key = std::string("params.") + name;
        const std::string prof = name;
        m[key] = [key, prof](ScenarioConfig& c, const std::string& v, std::size_t line) {
            c.profile_constants[prof] = to_number(v, line, key);
        };
        m[key + "_file"] = [key, prof, base_dir](ScenarioConfig& c, const std::string& v,
                                                 std::size_t line) {
            std::filesystem::path p = v;
            if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
            if (!std::filesystem::exists(p)) {
                fail_at(line, key + "_file", "file not found: " + p.string());
            }
            c.profile_files[prof] = p;
        };
    }
    m["grid.h"] = num(&ScenarioConfig::h, "grid.h");
    m["grid.theta_max"] = num(&ScenarioConfig::theta_max, "grid.theta_max");
    m["run.t_max"] = num(&ScenarioConfig::t_max, "run.t_max");
    m["run.sample_every"] = num(&ScenarioConfig::sample_every, "run.sample_every");
    m["run.snapshot_times"] = [](ScenarioConfig& c, const std::string& v, std::size_t line) {
        c.snapshot_times = to_list(v, line, "run.snapshot_times");
    };
    m["run.oracle"] = flag(&ScenarioConfig::run_oracle, "run.oracle");
    m["run.lyapunov"] = flag(&ScenarioConfig::run_lyapunov, "run.lyapunov");
    m["run.r0_only"] = flag(&ScenarioConfig::r0_only, "run.r0_only");
    m["run.oracle_t_max"] = num(&ScenarioConfig::oracle_t_max, "run.oracle_t_max");
    m["run.lyapunov_weight_cutoff"] =
        num(&ScenarioConfig::lyapunov_weight_cutoff, "run.lyapunov_weight_cutoff");
    m["init.S0"] = num(&ScenarioConfig::s0, "init.S0");
    m["init.V0"] = num(&ScenarioConfig::v0, "init.V0");
    m["init.d"] = [](ScenarioConfig& c, const std::string& v, std::size_t line) {
        c.d_values = to_list(v, line, "init.d");
    };
    m["init.band_start"] = num(&ScenarioConfig::band_start, "init.band_start");
    m["init.band_end"] = num(&ScenarioConfig::band_end, "init.band_end");
    m["output.dir"] = [base_dir](ScenarioConfig& c, const std::string& v, std::size_t) {
        std::filesystem::path p = v;
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        c.output_dir = p;
    };
    return m;
}

void require(bool ok, const std::string& key, const std::string& msg) {
    if (!ok) fail_key(key, msg);
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    const auto table = setters(base_dir);
    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_at(lineno, "", "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail_at(lineno, "", "missing key before '='");
        const auto it = table.find(key);
        if (it == table.end()) fail_at(lineno, key, "unknown key '" + key + "'");
        if (!seen.insert(key).second) fail_at(lineno, key, "duplicate key '" + key + "'");
        it->second(cfg, value, lineno);
    }
    validate_config(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config " + path.string(), 0, "");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

void validate_config(const ScenarioConfig& c) {
    auto finite_pos = [](double x) { return std::isfinite(x) && x > 0.0; };
    require(finite_pos(c.h), "grid.h", "must be positive");
    require(finite_pos(c.theta_max) && c.theta_max >= c.h, "grid.theta_max",
            "must be at least grid.h");
    require(finite_pos(c.t_max), "run.t_max", "must be positive");
    require(finite_pos(c.sample_every), "run.sample_every", "must be positive");
    for (double t : c.snapshot_times) {
        require(std::isfinite(t) && t >= 0.0 && t <= c.t_max, "run.snapshot_times",
                "times must lie in [0, run.t_max]");
    }
    require(finite_pos(c.oracle_t_max), "run.oracle_t_max", "must be positive");
    require(std::isfinite(c.lyapunov_weight_cutoff) && c.lyapunov_weight_cutoff >= 0.0 &&
                c.lyapunov_weight_cutoff < 1.0,
            "run.lyapunov_weight_cutoff", "must lie in [0, 1)");
    require(std::isfinite(c.s0) && c.s0 >= 0.0, "init.S0", "must be nonnegative");
    require(std::isfinite(c.v0) && c.v0 >= 0.0, "init.V0", "must be nonnegative");
    require(c.r0_only || !c.d_values.empty(), "init.d", "sweep needs at least one value");
    for (double d : c.d_values) require(std::isfinite(d) && d >= 0.0, "init.d", "must be nonnegative");
    require(std::isfinite(c.band_start) && c.band_start >= 0.0, "init.band_start",
            "must be nonnegative");
    require(std::isfinite(c.band_end) && c.band_end > c.band_start, "init.band_end",
            "must exceed init.band_start");

    auto scalar = [&](const std::optional<double>& v, const char* key, bool unit) {
        if (!v) {
            require(!c.builtin.empty(), key, "required when params.builtin is not set");
            return;
        }
        require(std::isfinite(*v) && *v >= 0.0, key, "must be finite and nonnegative");
        if (unit) require(*v <= 1.0, key, "must lie in [0, 1]");
    };
    scalar(c.N0, "params.N0", false);
    scalar(c.mu, "params.mu", false);
    if (c.mu) require(*c.mu > 0.0, "params.mu", "must be positive");
    scalar(c.p, "params.p", false);
    scalar(c.epsilon, "params.epsilon", true);
    scalar(c.zeta, "params.zeta", false);

    for (const char* name : kProfileNames) {
        const std::string key = std::string("params.") + name;
        const bool has_const = c.profile_constants.count(name) > 0;
        const bool has_file = c.profile_files.count(name) > 0;
        require(!(has_const && has_file), key, "set either a constant or a _file, not both");
        if (!has_const && !has_file) {
            require(!c.builtin.empty(), key, "required when params.builtin is not set");
        }
        if (has_const) {
            const double v = c.profile_constants.at(name);
            require(std::isfinite(v) && v >= 0.0, key, "must be finite and nonnegative");
            const std::string n = name;
            if (n == "q" || n == "xi") require(v <= 1.0, key, "must lie in [0, 1]");
        }
    }
}

namespace {

Units profile_units(const std::string& name) {
    if (name == "q" || name == "xi") return Units::Proportion;
    if (name == "beta_A" || name == "beta_I") return Units::Transmission;
    return Units::Rate;
}

AgeProfile& profile_slot(ParameterSet& ps, const std::string& name) {
    if (name == "beta_A") return ps.beta_A;
    if (name == "beta_I") return ps.beta_I;
    if (name == "k") return ps.k;
    if (name == "q") return ps.q;
    if (name == "xi") return ps.xi;
    if (name == "chi") return ps.chi;
    if (name == "gamma_A") return ps.gamma_A;
    return ps.gamma_I;
}

}  // namespace

ParameterSet build_parameters(const ScenarioConfig& cfg) {
    validate_config(cfg);
    GridPtr grid;
    try {
        grid = build_grid(cfg.h, cfg.theta_max);
    } catch (const InvalidInput& e) {
        fail_key("grid.h", e.what());
    }

    const AgeProfile placeholder = AgeProfile::zeros(grid, Units::Rate);
    ParameterSet ps{.beta_A = placeholder,
                    .beta_I = placeholder,
                    .k = placeholder,
                    .q = placeholder,
                    .xi = placeholder,
                    .chi = placeholder,
                    .gamma_A = placeholder,
                    .gamma_I = placeholder};
    if (!cfg.builtin.empty()) {
        const auto contact =
            cfg.builtin == "table2-c1" ? table2::Contact::C1 : table2::Contact::C2;
        ps = table2::parameters(grid, contact);
    }
    if (cfg.N0) ps.N0 = *cfg.N0;
    if (cfg.mu) ps.mu = *cfg.mu;
    if (cfg.p) ps.p = *cfg.p;
    if (cfg.epsilon) ps.epsilon = *cfg.epsilon;
    if (cfg.zeta) ps.zeta = *cfg.zeta;
    for (const auto& [name, value] : cfg.profile_constants) {
        profile_slot(ps, name) = AgeProfile::constant(grid, value, profile_units(name));
    }
    for (const auto& [name, file] : cfg.profile_files) {
        try {
            profile_slot(ps, name) = load_profile_csv(file, grid, profile_units(name));
        } catch (const InvalidInput& e) {
            fail_key("params." + name + "_file", e.what());
        }
    }
    try {
        ps.validate();
    } catch (const InvalidInput& e) {
        fail_key("params", e.what());
    }
    return ps;
}

}  // namespace sveair
