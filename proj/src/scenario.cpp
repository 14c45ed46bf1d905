#include "sveair/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <thread>

#include "sveair/csv.hpp"
#include "sveair/diagnostics.hpp"
#include "sveair/solver.hpp"
#include "sveair/volterra.hpp"

namespace sveair {

int ExitReport::exit_code() const {
    for (const auto& r : runs) {
        if (r.aborted) return 1;
    }
    return 0;
}

std::string d_label(double d) {
    if (d == std::floor(d) && std::abs(d) < 1e15) {
        return std::to_string(static_cast<long long>(d));
    }
    return format_double(d);
}

namespace {

RunSummary run_one(const ScenarioConfig& cfg, const ParameterSet& ps, const SteadyState& steady,
                   double d, Command command) {
    RunSummary out;
    out.d = d;
    const std::string label = d_label(d);
    const State init = band_initial_state(ps, cfg.s0, cfg.v0, d, cfg.band_start, cfg.band_end);

    const bool want_series = command == Command::Run;
    const bool want_oracle =
        command == Command::OracleCompare || (command == Command::Run && cfg.run_oracle);
    const bool want_lyapunov =
        command == Command::Lyapunov || (command == Command::Run && cfg.run_lyapunov);

    if (want_series || want_lyapunov) {
        EndemicOptions eo;
        eo.relative_weight_cutoff = cfg.lyapunov_weight_cutoff;
        LyapunovRecorder recorder(ps, steady, eo);
        State last;
        SimulationOptions opt;
        opt.t_max = cfg.t_max;
        opt.sample_every = cfg.sample_every;
        opt.snapshot_times = cfg.snapshot_times;
        opt.observer = [&](const State& s) {
            last = s;
            if (want_lyapunov) recorder(s);
        };
        const TimeSeries ts = simulate(init, ps, opt);
        const std::size_t n = ts.size() - 1;
        out.simulated = true;
        out.final_metric = convergence_metric(last, steady, ps);
        out.final_infected = ts.E[n] + ts.A[n] + ts.I[n];
        out.clamped = ts.clamped;
        out.max_balance = max_balance_error(ts, ps.N0);

        if (want_series) {
            const auto file = cfg.output_dir / ("run_d" + label + ".csv");
            write_time_series(file, ts);
            out.files.push_back(file);
            for (const auto& snap : ts.snapshots) {
                const auto sf =
                    cfg.output_dir / ("snapshot_d" + label + "_t" + format_double(snap.t) + ".csv");
                write_snapshot(sf, snap, ps.grid());
                out.files.push_back(sf);
            }
        }
        if (want_lyapunov) {
            const LyapunovTrace tr = recorder.finish();
            const auto file = cfg.output_dir / ("lyapunov_d" + label + ".csv");
            write_lyapunov(file, tr.t, tr.L, tr.dL, tr.flag);
            out.files.push_back(file);
            out.lyapunov_violations = static_cast<long long>(tr.report.violations);
        }
    }

    if (want_oracle) {
        const double t_oracle = std::min(cfg.oracle_t_max, kOracleDefaultMaxTime);
        const OracleComparison cmp = compare_with_oracle(init, ps, t_oracle);
        const auto of = cfg.output_dir / ("oracle_d" + label + ".csv");
        write_renewal(of, cmp.path);
        const auto cf = cfg.output_dir / ("oracle_compare_d" + label + ".csv");
        write_oracle_compare(cf, cmp.t, cmp.beta_pde, cmp.beta_volterra, cmp.rel_dev);
        out.files.push_back(of);
        out.files.push_back(cf);
        out.oracle_max_rel_dev = cmp.max_rel_dev;
    }
    return out;
}

}  // namespace

ExitReport run_scenario(const ScenarioConfig& cfg, Command command) {
    const ParameterSet ps = build_parameters(cfg);
    ExitReport report;
    report.r0 = compute_R0(ps);
    const BetaQuadratic quad = beta_quadratic(ps, report.r0);
    report.beta_star = solve_beta_star(quad, report.r0.r0);
    const SteadyState steady = steady_state(ps, report.beta_star);
    report.kind = steady.kind;

    std::filesystem::create_directories(cfg.output_dir);
    write_r0(cfg.output_dir / "r0.csv", report.r0, report.beta_star);
    if (command == Command::R0Report || (command == Command::Run && cfg.r0_only)) return report;

    // Stability bound is a configuration error for the whole sweep; check it once
    // before spawning workers.
    const CharacteristicStepper probe(ps);
    (void)probe;

    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(cfg.d_values.size(),
                                                       std::thread::hardware_concurrency()));
    report.runs.resize(cfg.d_values.size());
    for (std::size_t start = 0; start < cfg.d_values.size(); start += workers) {
        std::vector<std::future<RunSummary>> jobs;
        const std::size_t stop = std::min(cfg.d_values.size(), start + workers);
        for (std::size_t k = start; k < stop; ++k) {
            jobs.push_back(std::async(std::launch::async, run_one, std::cref(cfg), std::cref(ps),
                                      std::cref(steady), cfg.d_values[k], command));
        }
        for (std::size_t k = start; k < stop; ++k) {
            try {
                report.runs[k] = jobs[k - start].get();
            } catch (const SimulationAborted& e) {
                report.runs[k].d = cfg.d_values[k];
                report.runs[k].aborted = true;
                report.runs[k].error = e.what();
            }
        }
    }
    return report;
}

void print_report(std::ostream& os, const ExitReport& rep) {
    os << "r0 = " << format_double(rep.r0.r0) << " (r_a = " << format_double(rep.r0.r_a)
       << ", r_i = " << format_double(rep.r0.r_i)
       << ", prefactor = " << format_double(rep.r0.prefactor) << ")\n";
    os << "beta* = " << format_double(rep.beta_star) << ", steady state: "
       << (rep.kind == SteadyKind::Endemic ? "endemic" : "disease-free") << "\n";
    for (const auto& r : rep.runs) {
        os << "d = " << d_label(r.d) << ": ";
        if (r.aborted) {
            os << "ABORTED: " << r.error << "\n";
            continue;
        }
        const char* sep = "";
        if (r.simulated) {
            os << "metric = " << format_double(r.final_metric)
               << ", E+A+I = " << format_double(r.final_infected) << ", clamped = " << r.clamped
               << ", balance = " << format_double(r.max_balance);
            sep = ", ";
        }
        if (r.oracle_max_rel_dev >= 0.0) {
            os << sep << "oracle max rel dev = " << format_double(r.oracle_max_rel_dev);
        }
        if (r.lyapunov_violations >= 0) os << ", lyapunov violations = " << r.lyapunov_violations;
        os << "\n";
    }
}

}  // namespace sveair
