#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sveair/config.hpp"
#include "sveair/reproduction.hpp"

namespace sveair {

enum class Command {
    Run,            // d-sweep time series (+ oracle / lyapunov if toggled)
    R0Report,       // r0.csv only
    OracleCompare,  // renewal march vs PDE for each d
    Lyapunov,       // Lyapunov trace for each d
};

struct RunSummary {
    double d = 0.0;
    bool aborted = false;
    std::string error;
    bool simulated = false;       // false when only the oracle ran
    double final_metric = 0.0;    // convergence_metric at t_max
    double final_infected = 0.0;  // E + A + I at t_max
    std::size_t clamped = 0;
    double max_balance = 0.0;
    double oracle_max_rel_dev = -1.0;         // < 0: not run
    long long lyapunov_violations = -1;       // < 0: not run
    std::vector<std::filesystem::path> files;
};

struct ExitReport {
    R0Breakdown r0;
    double beta_star = 0.0;
    SteadyKind kind = SteadyKind::DiseaseFree;
    std::vector<RunSummary> runs;

    /// 0 unless a run aborted.
    int exit_code() const;
};

/// File-name label of a sweep value: integers print without exponent (1e4 -> "10000").
std::string d_label(double d);

/// Runs the configured scenario and writes its CSVs under cfg.output_dir.
/// Sweep members run in parallel; each writes only its own files.
ExitReport run_scenario(const ScenarioConfig& cfg, Command command = Command::Run);

void print_report(std::ostream& os, const ExitReport& report);

}  // namespace sveair
