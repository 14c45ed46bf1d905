#include "sveair/reproduction.hpp"

#include <cmath>

namespace sveair {

namespace {

double weighted_sum(std::span<const double> weight, std::span<const double> surv, double h) {
    double sum = 0.0;
    for (std::size_t j = 0; j < weight.size(); ++j) sum += weight[j] * surv[j];
    return h * sum;
}

}  // namespace

ReproductionBlocks reproduction_blocks(const ParameterSet& params) {
    params.validate();
    const double h = params.grid().h();
    const std::size_t n = params.grid().n_nodes();
    const ExitRates rates = exit_rates(params);

    ReproductionBlocks b;
    b.surv_e = survival_factors(rates.exposed, params.mu, h);
    b.surv_a = survival_factors(rates.asymptomatic, params.mu, h);
    b.surv_i = survival_factors(rates.symptomatic, params.mu, h);

    std::vector<double> kq(n), k1q(n), chi1xi(n);
    for (std::size_t j = 0; j < n; ++j) {
        kq[j] = params.k[j] * params.q[j];
        k1q[j] = params.k[j] * (1.0 - params.q[j]);
        chi1xi[j] = params.chi[j] * (1.0 - params.xi[j]);
    }
    b.exposed_to_a = weighted_sum(kq, b.surv_e, h);
    b.exposed_to_i = weighted_sum(k1q, b.surv_e, h);
    b.asympt_to_i = weighted_sum(chi1xi, b.surv_a, h);
    b.infect_a = weighted_sum(params.beta_A.values(), b.surv_a, h);
    b.infect_i = weighted_sum(params.beta_I.values(), b.surv_i, h);
    return b;
}

namespace {

double ra_from(const ReproductionBlocks& b) { return b.exposed_to_a * b.infect_a; }

double ri_from(const ReproductionBlocks& b) {
    return (b.exposed_to_i + b.exposed_to_a * b.asympt_to_i) * b.infect_i;
}

}  // namespace

double compute_RA(const ParameterSet& params) { return ra_from(reproduction_blocks(params)); }

double compute_RI(const ParameterSet& params) { return ri_from(reproduction_blocks(params)); }

double r0_prefactor(const ParameterSet& params) {
    const double vacc = 1.0 + params.p * (1.0 - params.epsilon) /
                                  (params.zeta * params.epsilon + params.mu);
    return params.mu * params.N0 / (params.p + params.mu) * vacc;
}

R0Breakdown compute_R0(const ParameterSet& params) {
    const ReproductionBlocks b = reproduction_blocks(params);
    R0Breakdown out;
    out.r_a = ra_from(b);
    out.r_i = ri_from(b);
    out.prefactor = r0_prefactor(params);
    out.r0 = out.prefactor * (out.r_a + out.r_i);
    out.tail_bound = std::exp(-params.mu * params.grid().theta_max());
    return out;
}

BetaQuadratic beta_quadratic(const ParameterSet& params, const R0Breakdown& r0) {
    const double eps = params.epsilon;
    const double p = params.p;
    const double mu = params.mu;
    BetaQuadratic quad;
    quad.b2 = 1.0 - eps;
    quad.b1 = (p + mu) * (1.0 - eps) + params.zeta * eps + mu -
              mu * params.N0 * (1.0 - eps) * (r0.r_a + r0.r_i);
    quad.b0 = (p + mu) * (eps * params.zeta + mu) * (1.0 - r0.r0);
    return quad;
}

double solve_beta_star(const BetaQuadratic& quad, double r0) {
    if (r0 <= 1.0 + kR0TieBreak) return 0.0;
    if (quad.b2 == 0.0) return -quad.b0 / quad.b1;
    // b0 < 0 < b2, so the roots have opposite signs; pick the cancellation-free
    // expression for the positive one.
    const double disc = quad.b1 * quad.b1 - 4.0 * quad.b2 * quad.b0;
    const double root = std::sqrt(disc);
    if (quad.b1 >= 0.0) {
        const double t = -0.5 * (quad.b1 + root);
        return quad.b0 / t;
    }
    const double t = 0.5 * (root - quad.b1);
    return t / quad.b2;
}

double solve_beta_star(const ParameterSet& params) {
    const R0Breakdown r0 = compute_R0(params);
    return solve_beta_star(beta_quadratic(params, r0), r0.r0);
}

SteadyState steady_state(const ParameterSet& params, double beta_star) {
    if (!(beta_star >= 0.0) || !std::isfinite(beta_star)) {
        throw InvalidInput("steady state: beta* must be finite and nonnegative");
    }
    const ReproductionBlocks b = reproduction_blocks(params);
    const double eps = params.epsilon;

    SteadyState ss;
    ss.beta_star = beta_star;
    ss.s_star = params.mu * params.N0 / (params.p + beta_star + params.mu);
    ss.v_star = params.p * ss.s_star /
                (params.zeta * eps + beta_star * (1.0 - eps) + params.mu);
    ss.eps_star = beta_star * (ss.s_star + (1.0 - eps) * ss.v_star);
    ss.alpha_star = ss.eps_star * b.exposed_to_a;
    ss.iota_star = ss.eps_star * b.exposed_to_i + ss.alpha_star * b.asympt_to_i;

    const std::size_t n = params.grid().n_nodes();
    ss.e_star.resize(n);
    ss.a_star.resize(n);
    ss.i_star.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        ss.e_star[j] = ss.eps_star * b.surv_e[j];
        ss.a_star[j] = ss.alpha_star * b.surv_a[j];
        ss.i_star[j] = ss.iota_star * b.surv_i[j];
    }
    ss.kind = beta_star > 0.0 ? SteadyKind::Endemic : SteadyKind::DiseaseFree;
    return ss;
}

SteadyState disease_free_state(const ParameterSet& params) { return steady_state(params, 0.0); }

SteadyState matching_steady_state(const ParameterSet& params) {
    return steady_state(params, solve_beta_star(params));
}

}  // namespace sveair
