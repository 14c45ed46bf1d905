#include "sveair/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace sveair {

double lyapunov_kernel(double x) {
    if (!(x > 0.0)) throw DomainError("lyapunov kernel needs a positive argument");
    const double d = x - 1.0;
    return d - std::log1p(d);
}

namespace {

// T[j] = h * sum_{m>=j} w[m] exp(-h sum_{l=j}^{m-1} (rate[l] + mu)).
std::vector<double> discounted_tail(std::span<const double> w, std::span<const double> rate,
                                    double mu, double h) {
    const std::size_t n = w.size();
    std::vector<double> out(n, 0.0);
    double acc = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        acc = h * w[j] + std::exp(-h * (rate[j] + mu)) * acc;
        out[j] = acc;
    }
    return out;
}

// T[j] = h * sum_{m>=j} w[m] u[m].
std::vector<double> plain_tail(std::span<const double> w, std::span<const double> u, double h) {
    const std::size_t n = w.size();
    std::vector<double> out(n, 0.0);
    double acc = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        acc += h * w[j] * u[j];
        out[j] = acc;
    }
    return out;
}

// x* f(x / x*), extended by continuity to x* = 0.
double scaled_kernel(double x, double x_star, const char* name) {
    if (x_star == 0.0) return x;
    if (!(x > 0.0)) {
        throw DomainError(std::string("lyapunov: ") + name + " must be positive");
    }
    return x_star * lyapunov_kernel(x / x_star);
}

}  // namespace

LyapunovWeights lyapunov_weights(const ParameterSet& params, const SteadyState& steady) {
    params.validate();
    const std::size_t n = params.grid().n_nodes();
    const double h = params.grid().h();
    const ExitRates rates = exit_rates(params);

    std::vector<double> kq(n), k1q(n), chi1xi(n);
    for (std::size_t j = 0; j < n; ++j) {
        kq[j] = params.k[j] * params.q[j];
        k1q[j] = params.k[j] * (1.0 - params.q[j]);
        chi1xi[j] = params.chi[j] * (1.0 - params.xi[j]);
    }

    LyapunovWeights w;
    w.susceptible_pool = steady.s_star + (1.0 - params.epsilon) * steady.v_star;
    const double c = w.susceptible_pool;

    w.f_i = discounted_tail(params.beta_I.values(), rates.symptomatic, params.mu, h);
    for (double& x : w.f_i) x *= c;
    w.f_i0 = w.f_i.front();

    const auto tail_beta_a = discounted_tail(params.beta_A.values(), rates.asymptomatic, params.mu, h);
    const auto tail_chi = discounted_tail(chi1xi, rates.asymptomatic, params.mu, h);
    w.f_a.resize(n);
    for (std::size_t j = 0; j < n; ++j) w.f_a[j] = c * tail_beta_a[j] + w.f_i0 * tail_chi[j];
    w.f_a0 = w.f_a.front();

    const auto tail_kq = discounted_tail(kq, rates.exposed, params.mu, h);
    const auto tail_k1q = discounted_tail(k1q, rates.exposed, params.mu, h);
    w.f_e.resize(n);
    for (std::size_t j = 0; j < n; ++j) w.f_e[j] = w.f_a0 * tail_kq[j] + w.f_i0 * tail_k1q[j];
    return w;
}

double lyapunov_dfe(const State& state, const SteadyState& steady,
                    const LyapunovWeights& weights, const ParameterSet& params) {
    if (steady.kind != SteadyKind::DiseaseFree) {
        throw InvalidInput("lyapunov_dfe needs the disease-free steady state");
    }
    const double h = params.grid().h();
    double dens = 0.0;
    for (std::size_t j = 0; j < state.e.size(); ++j) {
        dens += weights.f_e[j] * state.e[j] + weights.f_a[j] * state.a[j] +
                weights.f_i[j] * state.i[j];
    }
    return scaled_kernel(state.s, steady.s_star, "S") + scaled_kernel(state.v, steady.v_star, "V") +
           h * dens;
}

EndemicTails endemic_tails(const ParameterSet& params, const SteadyState& steady) {
    const std::size_t n = params.grid().n_nodes();
    const double h = params.grid().h();
    std::vector<double> kq(n), k1q(n), chi1xi(n);
    for (std::size_t j = 0; j < n; ++j) {
        kq[j] = params.k[j] * params.q[j];
        k1q[j] = params.k[j] * (1.0 - params.q[j]);
        chi1xi[j] = params.chi[j] * (1.0 - params.xi[j]);
    }
    EndemicTails t;
    t.exposed_to_a = plain_tail(kq, steady.e_star, h);
    t.exposed_to_i = plain_tail(k1q, steady.e_star, h);
    t.infect_a = plain_tail(params.beta_A.values(), steady.a_star, h);
    t.asympt_to_i = plain_tail(chi1xi, steady.a_star, h);
    t.infect_i = plain_tail(params.beta_I.values(), steady.i_star, h);
    return t;
}

namespace {

// h * sum_j weight[j] f(u[j] / u*[j]) over the nodes that carry weight.
double weighted_kernel_sum(std::span<const double> weight, std::span<const double> u,
                           std::span<const double> u_star, double h, double relative_cutoff,
                           const char* name) {
    double wmax = 0.0;
    for (double w : weight) wmax = std::max(wmax, w);
    const double floor = relative_cutoff * wmax;
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u_star[j] < kSteadyUnderflow || !(weight[j] > 0.0) || weight[j] < floor) continue;
        if (!(u[j] > 0.0)) {
            throw DomainError(std::string("lyapunov: nonpositive ") + name + " density at node " +
                              std::to_string(j));
        }
        sum += weight[j] * lyapunov_kernel(u[j] / u_star[j]);
    }
    return h * sum;
}

}  // namespace

double lyapunov_endemic(const State& state, const SteadyState& steady,
                        const LyapunovWeights& weights, const EndemicTails& tails,
                        const ParameterSet& params, const EndemicOptions& options) {
    if (steady.kind != SteadyKind::Endemic) {
        throw InvalidInput("lyapunov_endemic needs the endemic steady state");
    }
    const std::size_t n = params.grid().n_nodes();
    const double h = params.grid().h();
    const double c = weights.susceptible_pool;

    std::vector<double> w_e(n), w_a(n), w_i(n);
    for (std::size_t j = 0; j < n; ++j) {
        w_e[j] = weights.f_a0 * tails.exposed_to_a[j] + weights.f_i0 * tails.exposed_to_i[j];
        w_a[j] = c * tails.infect_a[j] + weights.f_i0 * tails.asympt_to_i[j];
        w_i[j] = c * tails.infect_i[j];
    }
    const double cut = options.relative_weight_cutoff;
    return scaled_kernel(state.s, steady.s_star, "S") + scaled_kernel(state.v, steady.v_star, "V") +
           weighted_kernel_sum(w_e, state.e, steady.e_star, h, cut, "e") +
           weighted_kernel_sum(w_a, state.a, steady.a_star, h, cut, "a") +
           weighted_kernel_sum(w_i, state.i, steady.i_star, h, cut, "i");
}

MonotonicityReport monotonicity_check(const std::vector<double>& values,
                                      double relative_tolerance) {
    MonotonicityReport rep;
    double lmax = 0.0;
    for (double x : values) lmax = std::max(lmax, std::abs(x));
    rep.tolerance = relative_tolerance * lmax;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double inc = values[k + 1] - values[k];
        rep.max_increase = std::max(rep.max_increase, inc);
        if (inc > rep.tolerance) {
            ++rep.violations;
            rep.violating_intervals.push_back(k);
        }
    }
    return rep;
}

double convergence_metric(const State& state, const SteadyState& steady,
                          const ParameterSet& params) {
    const std::size_t n = params.grid().n_nodes();
    if (state.e.size() != n || steady.e_star.size() != n) {
        throw InvalidInput("convergence metric: state and steady state grids differ");
    }
    const double h = params.grid().h();
    double dens = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        dens += std::abs(state.e[j] - steady.e_star[j]) + std::abs(state.a[j] - steady.a_star[j]) +
                std::abs(state.i[j] - steady.i_star[j]);
    }
    return (std::abs(state.s - steady.s_star) + std::abs(state.v - steady.v_star) + h * dens) /
           params.N0;
}

double max_balance_error(const TimeSeries& ts, double N0) {
    double worst = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double total = ts.S[k] + ts.V[k] + ts.E[k] + ts.A[k] + ts.I[k] + ts.removed[k];
        worst = std::max(worst, std::abs(total - N0) / N0);
    }
    return worst;
}

LyapunovRecorder::LyapunovRecorder(const ParameterSet& params, const SteadyState& steady,
                                   const EndemicOptions& options)
    : params_(&params),
      steady_(&steady),
      options_(options),
      weights_(lyapunov_weights(params, steady)) {
    if (steady.kind == SteadyKind::Endemic) tails_ = endemic_tails(params, steady);
}

void LyapunovRecorder::operator()(const State& state) {
    try {
        const double l = steady_->kind == SteadyKind::DiseaseFree
                             ? lyapunov_dfe(state, *steady_, weights_, *params_)
                             : lyapunov_endemic(state, *steady_, weights_, tails_, *params_,
                                                options_);
        t_.push_back(state.t);
        L_.push_back(l);
    } catch (const DomainError&) {
        ++undefined_;
    }
}

LyapunovTrace LyapunovRecorder::finish() const {
    LyapunovTrace tr;
    tr.t = t_;
    tr.L = L_;
    tr.undefined = undefined_;
    tr.report = monotonicity_check(L_);
    tr.dL.assign(L_.size(), 0.0);
    tr.flag.assign(L_.size(), 0.0);
    for (std::size_t k = 1; k < L_.size(); ++k) {
        tr.dL[k] = (L_[k] - L_[k - 1]) / (t_[k] - t_[k - 1]);
    }
    for (std::size_t k : tr.report.violating_intervals) tr.flag[k + 1] = 1.0;
    return tr;
}

}  // namespace sveair
