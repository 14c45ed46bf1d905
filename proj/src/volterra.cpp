#include "sveair/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sveair {

namespace {

// Cumulative hazard H[j] = h * sum_{m<j} (rate[m] + mu).
std::vector<double> cumulative_hazard(std::span<const double> rate, double mu, double h) {
    std::vector<double> out(rate.size(), 0.0);
    for (std::size_t j = 1; j < rate.size(); ++j) out[j] = out[j - 1] + h * (rate[j - 1] + mu);
    return out;
}

}  // namespace

RenewalPath solve_renewal(const State& init, const ParameterSet& params, double t_max) {
    params.validate();
    const AgeGrid& g = params.grid();
    const std::size_t N = g.n_nodes();
    const double h = g.h();
    if (init.e.size() != N || init.a.size() != N || init.i.size() != N) {
        throw InvalidInput("initial densities do not match the parameter grid");
    }
    if (!(t_max > 0.0)) throw InvalidInput("t_max must be positive");

    const ExitRates rates = exit_rates(params);
    const std::vector<double> surv_e = survival_factors(rates.exposed, params.mu, h);
    const std::vector<double> surv_a = survival_factors(rates.asymptomatic, params.mu, h);
    const std::vector<double> surv_i = survival_factors(rates.symptomatic, params.mu, h);

    // Per-cell survival along a characteristic: exp(-h (rate[j] + mu)).
    std::vector<double> cell_e(N), cell_a(N), cell_i(N);
    for (std::size_t j = 0; j < N; ++j) {
        cell_e[j] = std::exp(-h * (rates.exposed[j] + params.mu));
        cell_a[j] = std::exp(-h * (rates.asymptomatic[j] + params.mu));
        cell_i[j] = std::exp(-h * (rates.symptomatic[j] + params.mu));
    }

    std::vector<double> kq(N), k1q(N), chi1xi(N);
    for (std::size_t j = 0; j < N; ++j) {
        kq[j] = params.k[j] * params.q[j];
        k1q[j] = params.k[j] * (1.0 - params.q[j]);
        chi1xi[j] = params.chi[j] * (1.0 - params.xi[j]);
    }
    const auto bA = params.beta_A.values();
    const auto bI = params.beta_I.values();

    // Initial cohorts carried along their characteristics: carry_x[s] is the
    // density at time n of the cohort that had age s at t = 0 (now age s + n).
    std::vector<double> carry_e = init.e;
    std::vector<double> carry_a = init.a;
    std::vector<double> carry_i = init.i;

    const auto n_steps = static_cast<std::size_t>(std::llround(t_max / h));
    // bound_x[m] is the density entering age 0 at time m (m >= 1).
    std::vector<double> bound_e(n_steps + 1, 0.0), bound_a(n_steps + 1, 0.0),
        bound_i(n_steps + 1, 0.0);

    RenewalPath path;
    path.times.reserve(n_steps + 1);
    double s = init.s;
    double v = init.v;
    const double eps_v = 1.0 - params.epsilon;

    for (std::size_t n = 0;; ++n) {
        double beta = 0.0, alpha = 0.0, iota = 0.0;

        // Ages below t: entered through the boundary at time n - j.
        const std::size_t hist = std::min(n, N);
        for (std::size_t j = 0; j < hist; ++j) {
            const double e = bound_e[n - j] * surv_e[j];
            const double a = bound_a[n - j] * surv_a[j];
            const double i = bound_i[n - j] * surv_i[j];
            beta += bA[j] * a + bI[j] * i;
            alpha += kq[j] * e;
            iota += k1q[j] * e + chi1xi[j] * a;
        }
        // Ages at or above t: initial data.
        for (std::size_t j = n; j < N; ++j) {
            const std::size_t s0 = j - n;
            const double e = carry_e[s0];
            const double a = carry_a[s0];
            const double i = carry_i[s0];
            beta += bA[j] * a + bI[j] * i;
            alpha += kq[j] * e;
            iota += k1q[j] * e + chi1xi[j] * a;
        }
        beta *= h;
        alpha *= h;
        iota *= h;
        const double eps = beta * (s + eps_v * v);

        if (!std::isfinite(beta) || !std::isfinite(alpha) || !std::isfinite(iota) ||
            !std::isfinite(s) || !std::isfinite(v)) {
            throw SimulationAborted("renewal march: non-finite value at step " + std::to_string(n),
                                    n);
        }
        path.times.push_back(init.t + static_cast<double>(n) * h);
        path.beta.push_back(beta);
        path.eps.push_back(eps);
        path.alpha.push_back(alpha);
        path.iota.push_back(iota);
        path.s.push_back(s);
        path.v.push_back(v);
        if (n == n_steps) break;

        bound_e[n + 1] = eps;
        bound_a[n + 1] = alpha;
        bound_i[n + 1] = iota;

        const double decay_s = std::exp(-h * (params.p + beta + params.mu));
        const double decay_v =
            std::exp(-h * (params.zeta * params.epsilon + beta * eps_v + params.mu));
        const double s_next = decay_s * (s + params.mu * params.N0 * h);
        const double v_next = decay_v * (v + params.p * s * h);
        s = s_next;
        v = v_next;

        // Age the initial cohorts by one cell.
        for (std::size_t s0 = 0; s0 + n + 1 < N; ++s0) {
            carry_e[s0] *= cell_e[s0 + n];
            carry_a[s0] *= cell_a[s0 + n];
            carry_i[s0] *= cell_i[s0 + n];
        }
    }
    return path;
}

std::vector<double> reconstruct_exposed(const RenewalPath& path, const State& init,
                                        const ParameterSet& params, std::size_t n) {
    if (n >= path.size()) throw InvalidInput("reconstruction time beyond the renewal path");
    const AgeGrid& g = params.grid();
    const std::size_t N = g.n_nodes();
    const double h = g.h();
    const std::vector<double> hazard = cumulative_hazard(params.k.values(), params.mu, h);

    std::vector<double> out(N);
    for (std::size_t j = 0; j < N; ++j) {
        if (j < n) {
            out[j] = path.eps[n - j - 1] * std::exp(-hazard[j]);
        } else {
            out[j] = init.e[j - n] * std::exp(-(hazard[j] - hazard[j - n]));
        }
    }
    return out;
}

OracleComparison compare_with_oracle(const State& init, const ParameterSet& params,
                                     double t_max) {
    SimulationOptions opt;
    opt.t_max = t_max;
    opt.sample_every = params.grid().h();
    const TimeSeries ts = simulate(init, params, opt);

    OracleComparison cmp;
    cmp.path = solve_renewal(init, params, t_max);
    if (cmp.path.size() != ts.size()) {
        throw InvalidInput("oracle and solver produced different sample counts");
    }
    cmp.t = ts.t;
    cmp.beta_pde = ts.beta;
    cmp.beta_volterra = cmp.path.beta;
    cmp.rel_dev.resize(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double a = ts.beta[k];
        const double b = cmp.path.beta[k];
        const double diff = std::abs(a - b);
        cmp.rel_dev[k] = diff == 0.0 ? 0.0 : diff / std::abs(b);
        if (cmp.rel_dev[k] > cmp.max_rel_dev) {
            cmp.max_rel_dev = cmp.rel_dev[k];
            cmp.t_at_max = ts.t[k];
        }
    }
    return cmp;
}

}  // namespace sveair
