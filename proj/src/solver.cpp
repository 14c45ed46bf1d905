#include "sveair/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sveair {

namespace {

void check_shape(const State& state, const ParameterSet& params) {
    const std::size_t n = params.grid().n_nodes();
    if (state.e.size() != n || state.a.size() != n || state.i.size() != n) {
        throw InvalidInput("state densities do not match the parameter grid");
    }
}

std::vector<double> decay_factors(std::span<const double> rate, double mu, double h,
                                  const char* name) {
    std::vector<double> out(rate.size());
    for (std::size_t j = 0; j < rate.size(); ++j) {
        const double x = h * (rate[j] + mu);
        if (!(x < 1.0)) {
            throw ConfigurationError(std::string("stability bound violated: h*(") + name +
                                     " + mu) = " + std::to_string(x) + " >= 1 at node " +
                                     std::to_string(j));
        }
        out[j] = 1.0 - x;
    }
    return out;
}

inline void clamp(double& x, std::size_t& counter) {
    if (x < 0.0) {
        x = 0.0;
        ++counter;
    }
}

// Shift one density a node along the characteristic, decaying it on the way.
void transport(std::vector<double>& u, const std::vector<double>& decay, double inflow,
               std::size_t& clamped) {
    for (std::size_t j = u.size() - 1; j > 0; --j) {
        u[j] = u[j - 1] * decay[j - 1];
        clamp(u[j], clamped);
    }
    u[0] = inflow;
    clamp(u[0], clamped);
}

}  // namespace

CharacteristicStepper::CharacteristicStepper(const ParameterSet& params)
    : params_(&params), h_(params.grid().h()) {
    params.validate();
    const ExitRates rates = exit_rates(params);
    decay_e_ = decay_factors(rates.exposed, params.mu, h_, "k");
    decay_a_ = decay_factors(rates.asymptomatic, params.mu, h_, "gamma_A xi + chi (1 - xi)");
    decay_i_ = decay_factors(rates.symptomatic, params.mu, h_, "gamma_I");

    const std::size_t n = params.grid().n_nodes();
    kq_.resize(n);
    k1q_.resize(n);
    chi1xi_.resize(n);
    gamma_a_xi_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        kq_[j] = params.k[j] * params.q[j];
        k1q_[j] = params.k[j] * (1.0 - params.q[j]);
        chi1xi_[j] = params.chi[j] * (1.0 - params.xi[j]);
        gamma_a_xi_[j] = params.gamma_A[j] * params.xi[j];
    }
}

CharacteristicStepper::Sums CharacteristicStepper::sums(const State& state) const {
    check_shape(state, *params_);
    const auto bA = params_->beta_A.values();
    const auto bI = params_->beta_I.values();
    const auto gI = params_->gamma_I.values();

    double beta = 0.0, alpha = 0.0, iota = 0.0, rec = 0.0;
    double me = 0.0, ma = 0.0, mi = 0.0;
    const std::size_t n = state.e.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double e = state.e[j];
        const double a = state.a[j];
        const double i = state.i[j];
        beta += bA[j] * a + bI[j] * i;
        alpha += kq_[j] * e;
        iota += k1q_[j] * e + chi1xi_[j] * a;
        rec += gamma_a_xi_[j] * a + gI[j] * i;
        me += e;
        ma += a;
        mi += i;
    }
    Sums out;
    out.bv.beta = h_ * beta;
    out.bv.alpha = h_ * alpha;
    out.bv.iota = h_ * iota;
    out.bv.eps = out.bv.beta * (state.s + (1.0 - params_->epsilon) * state.v);
    out.recovery = h_ * rec;
    out.mass_e = h_ * me;
    out.mass_a = h_ * ma;
    out.mass_i = h_ * mi;
    return out;
}

BoundaryValues CharacteristicStepper::boundary_values(const State& state) const {
    return sums(state).bv;
}

void CharacteristicStepper::advance(State& state) const {
    const ParameterSet& ps = *params_;
    const Sums sm = sums(state);
    const double beta = sm.bv.beta;

    const double s = state.s;
    const double v = state.v;
    double s_next = s + h_ * (ps.mu * ps.N0 - (ps.p + beta + ps.mu) * s);
    double v_next =
        v + h_ * (ps.p * s - (ps.zeta * ps.epsilon + beta * (1.0 - ps.epsilon) + ps.mu) * v);
    clamp(s_next, state.clamped);
    clamp(v_next, state.clamped);

    transport(state.e, decay_e_, sm.bv.eps, state.clamped);
    transport(state.a, decay_a_, sm.bv.alpha, state.clamped);
    transport(state.i, decay_i_, sm.bv.iota, state.clamped);

    state.removed += h_ * (ps.zeta * ps.epsilon * v + sm.recovery - ps.mu * state.removed);
    state.s = s_next;
    state.v = v_next;
    state.t += h_;
}

double force_of_infection(const State& state, const ParameterSet& params) {
    return boundary_values(state, params).beta;
}

BoundaryValues boundary_values(const State& state, const ParameterSet& params) {
    check_shape(state, params);
    const double h = params.grid().h();
    double beta = 0.0, alpha = 0.0, iota = 0.0;
    for (std::size_t j = 0; j < state.e.size(); ++j) {
        const double k = params.k[j];
        const double q = params.q[j];
        beta += params.beta_A[j] * state.a[j] + params.beta_I[j] * state.i[j];
        alpha += k * q * state.e[j];
        iota += k * (1.0 - q) * state.e[j] + params.chi[j] * (1.0 - params.xi[j]) * state.a[j];
    }
    BoundaryValues bv;
    bv.beta = h * beta;
    bv.eps = bv.beta * (state.s + (1.0 - params.epsilon) * state.v);
    bv.alpha = h * alpha;
    bv.iota = h * iota;
    return bv;
}

Aggregates aggregate(const State& state, const ParameterSet& params) {
    check_shape(state, params);
    const double h = params.grid().h();
    double me = 0.0, ma = 0.0, mi = 0.0;
    for (std::size_t j = 0; j < state.e.size(); ++j) {
        me += state.e[j];
        ma += state.a[j];
        mi += state.i[j];
    }
    Aggregates ag;
    ag.E = h * me;
    ag.A = h * ma;
    ag.I = h * mi;
    ag.R = params.N0 - state.s - state.v - ag.E - ag.A - ag.I;
    ag.N = state.s + state.v + ag.E + ag.A + ag.I + ag.R;
    return ag;
}

State step(const State& state, const ParameterSet& params) {
    const CharacteristicStepper stepper(params);
    State next = state;
    stepper.advance(next);
    return next;
}

State state_from_steady(const SteadyState& steady, const ParameterSet& params) {
    State st;
    st.s = steady.s_star;
    st.v = steady.v_star;
    st.e = steady.e_star;
    st.a = steady.a_star;
    st.i = steady.i_star;
    st.removed = aggregate(st, params).R;
    return st;
}

State band_initial_state(const ParameterSet& params, double s0, double v0, double d,
                         double band_start, double band_end) {
    if (s0 < 0.0 || v0 < 0.0 || d < 0.0) {
        throw InvalidInput("initial conditions must be nonnegative");
    }
    if (!(band_end > band_start) || band_start < 0.0) {
        throw InvalidInput("initial age band must be a nonempty interval of nonnegative ages");
    }
    const AgeGrid& g = params.grid();
    const std::size_t n = g.n_nodes();
    const auto first = static_cast<std::size_t>(std::ceil(band_start / g.h() - 1e-9));
    const auto last = std::min(n, static_cast<std::size_t>(std::ceil(band_end / g.h() - 1e-9)));
    if (first >= last) throw InvalidInput("initial age band contains no grid node");
    const double density = d / (g.h() * static_cast<double>(last - first));

    State st;
    st.s = s0;
    st.v = v0;
    st.e.assign(n, 0.0);
    st.a.assign(n, 0.0);
    st.i.assign(n, 0.0);
    for (std::size_t j = first; j < last; ++j) {
        st.e[j] = density;
        st.a[j] = density;
        st.i[j] = density;
    }
    st.removed = aggregate(st, params).R;
    if (st.removed < 0.0) throw InvalidInput("initial compartments exceed N0");
    return st;
}

namespace {

void record(TimeSeries& ts, const State& st, const BoundaryValues& bv, const Aggregates& ag) {
    ts.t.push_back(st.t);
    ts.S.push_back(st.s);
    ts.V.push_back(st.v);
    ts.E.push_back(ag.E);
    ts.A.push_back(ag.A);
    ts.I.push_back(ag.I);
    ts.R.push_back(ag.R);
    ts.N.push_back(ag.N);
    ts.beta.push_back(bv.beta);
    ts.eps.push_back(bv.eps);
    ts.alpha.push_back(bv.alpha);
    ts.iota.push_back(bv.iota);
    ts.removed.push_back(st.removed);
}

}  // namespace

TimeSeries CharacteristicStepper::simulate(State state, const SimulationOptions& options) const {
    check_shape(state, *params_);
    if (!(options.t_max > 0.0)) throw InvalidInput("t_max must be positive");
    if (!(options.sample_every > 0.0)) throw InvalidInput("sample_every must be positive");
    for (double x : state.e) if (!(x >= 0.0)) throw InvalidInput("initial e must be nonnegative");
    for (double x : state.a) if (!(x >= 0.0)) throw InvalidInput("initial a must be nonnegative");
    for (double x : state.i) if (!(x >= 0.0)) throw InvalidInput("initial i must be nonnegative");
    if (!(state.s >= 0.0) || !(state.v >= 0.0)) throw InvalidInput("initial S, V must be nonnegative");

    const auto n_steps = static_cast<std::size_t>(std::llround(options.t_max / h_));
    const auto stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.sample_every / h_)));

    std::vector<std::size_t> snap_steps;
    for (double ts : options.snapshot_times) {
        if (ts < 0.0 || ts > options.t_max + 0.5 * h_) {
            throw InvalidInput("snapshot time outside [0, t_max]");
        }
        snap_steps.push_back(static_cast<std::size_t>(std::llround(ts / h_)));
    }

    TimeSeries ts;
    const double t0 = state.t;
    for (std::size_t n = 0;; ++n) {
        const bool sample = (n % stride == 0) || n == n_steps;
        const bool snap = std::find(snap_steps.begin(), snap_steps.end(), n) != snap_steps.end();
        if (sample || snap) {
            const Sums sm = sums(state);
            Aggregates ag;
            ag.E = sm.mass_e;
            ag.A = sm.mass_a;
            ag.I = sm.mass_i;
            ag.R = params_->N0 - state.s - state.v - ag.E - ag.A - ag.I;
            ag.N = state.s + state.v + ag.E + ag.A + ag.I + ag.R;
            if (!std::isfinite(sm.bv.beta) || !std::isfinite(sm.bv.iota) ||
                !std::isfinite(sm.bv.alpha) || !std::isfinite(ag.R) ||
                !std::isfinite(sm.bv.eps)) {
                throw SimulationAborted("non-finite value at step " + std::to_string(n), n);
            }
            if (sample) {
                record(ts, state, sm.bv, ag);
                if (options.observer) options.observer(state);
            }
            if (snap) ts.snapshots.push_back({state.t, state.e, state.a, state.i});
        }
        if (n == n_steps) break;
        advance(state);
        if (!std::isfinite(state.s) || !std::isfinite(state.v) || !std::isfinite(state.removed)) {
            throw SimulationAborted("non-finite value at step " + std::to_string(n + 1), n + 1);
        }
        state.t = t0 + static_cast<double>(n + 1) * h_;
    }
    ts.clamped = state.clamped;
    return ts;
}

TimeSeries simulate(const State& init, const ParameterSet& params,
                    const SimulationOptions& options) {
    const CharacteristicStepper stepper(params);
    return stepper.simulate(init, options);
}

}  // namespace sveair
