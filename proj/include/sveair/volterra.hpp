#pragma once

#include <vector>

#include "sveair/parameters.hpp"
#include "sveair/solver.hpp"

namespace sveair {

/// Boundary functionals and (S, V) marched from the renewal equations.
struct RenewalPath {
    std::vector<double> times;
    std::vector<double> beta, eps, alpha, iota;
    std::vector<double> s, v;

    std::size_t size() const { return times.size(); }
};

inline constexpr double kOracleDefaultMaxTime = 2000.0;

/// Marches the integral-equation form of the model in steps of h. Densities
/// are never stored: each boundary integral is assembled from the history of
/// boundary values (ages below t) and from the initial data carried along its
/// characteristic (ages at or above t). S and V use the exponential
/// integral formulas with the marched beta, not the PDE's Euler update.
RenewalPath solve_renewal(const State& init, const ParameterSet& params, double t_max);

/// Density e(t_n, theta_j) reconstructed from a renewal path and initial data.
std::vector<double> reconstruct_exposed(const RenewalPath& path, const State& init,
                                        const ParameterSet& params, std::size_t n);

/// beta(t) from the PDE solver next to the renewal march, at every step.
struct OracleComparison {
    std::vector<double> t, beta_pde, beta_volterra, rel_dev;
    double max_rel_dev = 0.0;
    double t_at_max = 0.0;
    RenewalPath path;
};

/// rel_dev = |beta_pde - beta_volterra| / beta_volterra (0 where both vanish).
OracleComparison compare_with_oracle(const State& init, const ParameterSet& params,
                                     double t_max);

}  // namespace sveair
