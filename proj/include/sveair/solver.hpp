#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sveair/parameters.hpp"
#include "sveair/reproduction.hpp"

namespace sveair {

/// The grid step violates h * (max exit rate + mu) < 1.
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A run produced a non-finite value.
class SimulationAborted : public std::runtime_error {
public:
    SimulationAborted(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// (S, V, e, a, i) at one instant. `removed` is R integrated explicitly from
/// its own inflow/outflow and is used only for the conservation balance.
struct State {
    double t = 0.0;
    double s = 0.0;
    double v = 0.0;
    std::vector<double> e;
    std::vector<double> a;
    std::vector<double> i;
    double removed = 0.0;
    /// Negative values zeroed so far along this trajectory.
    std::size_t clamped = 0;
};

struct BoundaryValues {
    double beta = 0.0;   // force of infection
    double eps = 0.0;    // e(t, 0)
    double alpha = 0.0;  // a(t, 0)
    double iota = 0.0;   // i(t, 0)
};

struct Aggregates {
    double E = 0.0;
    double A = 0.0;
    double I = 0.0;
    double R = 0.0;
    double N = 0.0;
};

double force_of_infection(const State& state, const ParameterSet& params);
BoundaryValues boundary_values(const State& state, const ParameterSet& params);
Aggregates aggregate(const State& state, const ParameterSet& params);

/// One step of length h along the characteristics. Throws ConfigurationError
/// if the parameters violate the stability bound.
State step(const State& state, const ParameterSet& params);

/// State at a steady state, with R filling the remainder of N0.
State state_from_steady(const SteadyState& steady, const ParameterSet& params);

/// E0 = A0 = I0 = d spread uniformly over ages [band_start, band_end) days.
State band_initial_state(const ParameterSet& params, double s0, double v0, double d,
                         double band_start, double band_end);

struct DensitySnapshot {
    double t = 0.0;
    std::vector<double> e;
    std::vector<double> a;
    std::vector<double> i;
};

struct TimeSeries {
    std::vector<double> t, S, V, E, A, I, R, N, beta, eps, alpha, iota;
    /// Explicitly integrated R, for the conservation balance.
    std::vector<double> removed;
    std::vector<DensitySnapshot> snapshots;
    std::size_t clamped = 0;

    std::size_t size() const { return t.size(); }
};

struct SimulationOptions {
    double t_max = 1500.0;
    double sample_every = 1.0;
    std::vector<double> snapshot_times;
    /// Called on every sampled state (including t = 0 and the final one).
    std::function<void(const State&)> observer;
};

/// Precomputed decay factors and quadrature weights for repeated stepping.
class CharacteristicStepper {
public:
    explicit CharacteristicStepper(const ParameterSet& params);

    const ParameterSet& params() const { return *params_; }

    BoundaryValues boundary_values(const State& state) const;

    /// Advances `state` by one step in place.
    void advance(State& state) const;

    TimeSeries simulate(State state, const SimulationOptions& options) const;

private:
    struct Sums {
        BoundaryValues bv;
        double recovery = 0.0;
        double mass_e = 0.0, mass_a = 0.0, mass_i = 0.0;
    };
    Sums sums(const State& state) const;

    const ParameterSet* params_;
    double h_;
    std::vector<double> decay_e_, decay_a_, decay_i_;
    std::vector<double> kq_, k1q_, chi1xi_, gamma_a_xi_;
};

TimeSeries simulate(const State& init, const ParameterSet& params,
                    const SimulationOptions& options);

}  // namespace sveair
