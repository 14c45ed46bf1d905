#pragma once

// Helpers shared by the unit tests and the acceptance runner: constant-rate
// parameter sets with their closed-form integrals, and a bisection oracle for
// the endemic force of infection.

#include <cmath>
#include <random>

#include "sveair/parameters.hpp"
#include "sveair/reproduction.hpp"

namespace sveair::testing {

struct ConstRates {
    double N0 = 1e6;
    double mu = 4.38356e-5;
    double p = 1e-3;
    double epsilon = 0.7;
    double zeta = 1.0 / 14.0;
    double beta_A = 1e-9;
    double beta_I = 2e-9;
    double k = 0.25;
    double q = 0.4;
    double xi = 0.5;
    double chi = 0.2;
    double gamma_A = 0.125;
    double gamma_I = 1.0 / 14.0;
};

inline ParameterSet constant_params(const GridPtr& g, const ConstRates& r) {
    auto rate = [&](double v) { return AgeProfile::constant(g, v, Units::Rate); };
    auto prop = [&](double v) { return AgeProfile::constant(g, v, Units::Proportion); };
    auto trans = [&](double v) { return AgeProfile::constant(g, v, Units::Transmission); };
    ParameterSet ps{.N0 = r.N0,
                    .mu = r.mu,
                    .p = r.p,
                    .epsilon = r.epsilon,
                    .zeta = r.zeta,
                    .omega = 1.0,
                    .beta_A = trans(r.beta_A),
                    .beta_I = trans(r.beta_I),
                    .k = rate(r.k),
                    .q = prop(r.q),
                    .xi = prop(r.xi),
                    .chi = rate(r.chi),
                    .gamma_A = rate(r.gamma_A),
                    .gamma_I = rate(r.gamma_I)};
    ps.validate();
    return ps;
}

inline double asympt_exit(const ConstRates& r) {
    return r.gamma_A * r.xi + r.chi * (1.0 - r.xi) + r.mu;
}

/// int_0^inf k q e^{-(k+mu)s} ds * int_0^inf beta_A e^{-(gamma_A xi + chi(1-xi) + mu)s} ds
inline double analytic_RA(const ConstRates& r) {
    return r.k * r.q / (r.k + r.mu) * r.beta_A / asympt_exit(r);
}

inline double analytic_RI(const ConstRates& r) {
    const double direct = r.k * (1.0 - r.q) / (r.k + r.mu);
    const double via_a = r.k * r.q / (r.k + r.mu) * r.chi * (1.0 - r.xi) / asympt_exit(r);
    return (direct + via_a) * r.beta_I / (r.gamma_I + r.mu);
}

inline double analytic_prefactor(const ConstRates& r) {
    return r.mu * r.N0 / (r.p + r.mu) * (1.0 + r.p * (1.0 - r.epsilon) / (r.zeta * r.epsilon + r.mu));
}

inline double analytic_R0(const ConstRates& r) {
    return analytic_prefactor(r) * (analytic_RA(r) + analytic_RI(r));
}

/// Solves 1 = (mu N0/(p+b+mu)) (1 + p(1-eps)/(zeta eps + b(1-eps) + mu)) (R_A + R_I)
/// for b > 0 by bisection. The right side decreases in b.
inline double bisection_beta_star(const ParameterSet& ps, double ra_plus_ri) {
    auto g = [&](double b) {
        return ps.mu * ps.N0 / (ps.p + b + ps.mu) *
                   (1.0 + ps.p * (1.0 - ps.epsilon) /
                              (ps.zeta * ps.epsilon + b * (1.0 - ps.epsilon) + ps.mu)) *
                   ra_plus_ri -
               1.0;
    };
    double lo = 0.0;
    double hi = 1.0;
    while (g(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Constant rates drawn around the reference scale (rates within a factor
/// of about two of the tabulated ones).
inline ConstRates random_rates(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto between = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
    ConstRates r;
    r.N0 = between(1e5, 1e8);
    r.mu = between(1e-5, 1e-4);
    r.p = between(0.0, 5e-3);
    r.epsilon = between(0.0, 1.0);
    r.zeta = between(1.0 / 30.0, 1.0 / 7.0);
    r.k = between(1.0 / 6.0, 1.0 / 3.0);
    r.q = between(0.1, 0.6);
    r.xi = between(0.2, 0.8);
    r.chi = between(1.0 / 7.0, 1.0 / 4.0);
    r.gamma_A = between(1.0 / 14.0, 1.0 / 5.0);
    r.gamma_I = between(1.0 / 21.0, 1.0 / 7.0);
    // Transmission scaled so R0 straddles 1.
    const double scale = between(0.05, 20.0) / r.N0;
    r.beta_A = scale * between(0.05, 0.5);
    r.beta_I = scale * between(0.05, 0.5);
    return r;
}

}  // namespace sveair::testing
