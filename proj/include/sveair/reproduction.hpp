#pragma once

#include <vector>

#include "sveair/parameters.hpp"

namespace sveair {

/// The scalar quadratures that R0 and the steady states are assembled from.
/// Every integral is a left-rectangle sum over all grid nodes against the
/// exponential survival factor of the compartment it lives in.
struct ReproductionBlocks {
    std::vector<double> surv_e;  // exp(-int_0^theta k + mu)
    std::vector<double> surv_a;  // exp(-int_0^theta gamma_A xi + chi (1-xi) + mu)
    std::vector<double> surv_i;  // exp(-int_0^theta gamma_I + mu)

    double exposed_to_a = 0.0;   // int k q surv_e
    double exposed_to_i = 0.0;   // int k (1-q) surv_e
    double asympt_to_i = 0.0;    // int chi (1-xi) surv_a
    double infect_a = 0.0;       // int beta_A surv_a
    double infect_i = 0.0;       // int beta_I surv_i
};

ReproductionBlocks reproduction_blocks(const ParameterSet& params);

struct R0Breakdown {
    double r_a = 0.0;
    double r_i = 0.0;
    double prefactor = 0.0;
    double r0 = 0.0;
    /// Relative weight of the survival tail cut off at theta_max, exp(-mu*theta_max).
    double tail_bound = 0.0;
};

double compute_RA(const ParameterSet& params);
double compute_RI(const ParameterSet& params);
double r0_prefactor(const ParameterSet& params);
R0Breakdown compute_R0(const ParameterSet& params);

/// Coefficients of b2*beta^2 + b1*beta + b0 = 0 for the endemic force of infection.
struct BetaQuadratic {
    double b2 = 0.0;
    double b1 = 0.0;
    double b0 = 0.0;

    double operator()(double beta) const { return (b2 * beta + b1) * beta + b0; }
};

BetaQuadratic beta_quadratic(const ParameterSet& params, const R0Breakdown& r0);

/// |r0 - 1| below this counts as r0 <= 1.
inline constexpr double kR0TieBreak = 1e-12;

/// Zero when r0 <= 1, otherwise the unique positive root of the quadratic.
double solve_beta_star(const BetaQuadratic& quad, double r0);
double solve_beta_star(const ParameterSet& params);

enum class SteadyKind { DiseaseFree, Endemic };

struct SteadyState {
    SteadyKind kind = SteadyKind::DiseaseFree;
    double s_star = 0.0;
    double v_star = 0.0;
    double beta_star = 0.0;
    double eps_star = 0.0;
    double alpha_star = 0.0;
    double iota_star = 0.0;
    std::vector<double> e_star;
    std::vector<double> a_star;
    std::vector<double> i_star;
};

SteadyState steady_state(const ParameterSet& params, double beta_star);

/// The disease-free state (beta* = 0).
SteadyState disease_free_state(const ParameterSet& params);

/// Steady state selected by R0: endemic when r0 > 1, otherwise disease-free.
SteadyState matching_steady_state(const ParameterSet& params);

}  // namespace sveair
