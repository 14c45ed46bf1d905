#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sveair/parameters.hpp"
#include "sveair/reproduction.hpp"
#include "sveair/solver.hpp"

namespace sveair {

/// A Lyapunov functional was evaluated outside its domain (a nonpositive
/// argument under the logarithm).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// f(x) = x - 1 - ln x.
double lyapunov_kernel(double x);

/// Weights that cancel the density terms of dL/dt. Tail integrals
/// int_theta^inf are evaluated by backward recursion from the last node.
struct LyapunovWeights {
    std::vector<double> f_e, f_a, f_i;
    double f_a0 = 0.0;
    double f_i0 = 0.0;
    /// S* + (1 - epsilon) V*
    double susceptible_pool = 0.0;
};

LyapunovWeights lyapunov_weights(const ParameterSet& params, const SteadyState& steady);

/// Disease-free functional: S* f(S/S*) + V* f(V/V*) + int (f_e e + f_a a + f_i i).
double lyapunov_dfe(const State& state, const SteadyState& steady,
                    const LyapunovWeights& weights, const ParameterSet& params);

/// Tail masses int_theta^inf of the steady inflow densities that weight
/// f(u/u*) in the endemic functional.
struct EndemicTails {
    std::vector<double> exposed_to_a;  // int k q e*
    std::vector<double> exposed_to_i;  // int k (1-q) e*
    std::vector<double> infect_a;      // int beta_A a*
    std::vector<double> asympt_to_i;   // int chi (1-xi) a*
    std::vector<double> infect_i;      // int beta_I i*
};

EndemicTails endemic_tails(const ParameterSet& params, const SteadyState& steady);

/// Nodes whose steady density is below this are dropped from the endemic functional.
inline constexpr double kSteadyUnderflow = 1e-300;

struct EndemicOptions {
    /// Nodes whose tail weight is below cutoff * (largest tail weight of that
    /// term) are dropped as well; 0 keeps every node above kSteadyUnderflow.
    double relative_weight_cutoff = 0.0;
};

double lyapunov_endemic(const State& state, const SteadyState& steady,
                        const LyapunovWeights& weights, const EndemicTails& tails,
                        const ParameterSet& params, const EndemicOptions& options = {});

struct MonotonicityReport {
    double tolerance = 0.0;
    std::size_t violations = 0;
    /// Indices k where L[k+1] - L[k] > tolerance.
    std::vector<std::size_t> violating_intervals;
    double max_increase = 0.0;
};

/// Flags increases larger than 1e-8 * max(L).
MonotonicityReport monotonicity_check(const std::vector<double>& values,
                                      double relative_tolerance = 1e-8);

/// |S-S*|/N0 + |V-V*|/N0 + (||e-e*||_1 + ||a-a*||_1 + ||i-i*||_1) / N0.
double convergence_metric(const State& state, const SteadyState& steady,
                          const ParameterSet& params);

/// max_n |S+V+E+A+I+R~ - N0| / N0, with R~ the explicitly integrated removed class.
double max_balance_error(const TimeSeries& ts, double N0);

/// L sampled along a run, with backward-difference slopes and the flags of
/// monotonicity_check. Samples where L is undefined (a zero density under
/// the logarithm) are left out and counted in `undefined`.
struct LyapunovTrace {
    std::vector<double> t, L, dL, flag;
    MonotonicityReport report;
    std::size_t undefined = 0;
};

/// Evaluates the functional that matches `steady` on each observed state.
/// Pass it (by reference) as SimulationOptions::observer.
class LyapunovRecorder {
public:
    LyapunovRecorder(const ParameterSet& params, const SteadyState& steady,
                     const EndemicOptions& options = {});

    void operator()(const State& state);
    LyapunovTrace finish() const;

private:
    const ParameterSet* params_;
    const SteadyState* steady_;
    EndemicOptions options_;
    LyapunovWeights weights_;
    EndemicTails tails_;
    std::vector<double> t_, L_;
    std::size_t undefined_ = 0;
};

}  // namespace sveair
