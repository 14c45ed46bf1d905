#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "sveair/diagnostics.hpp"
#include "sveair/solver.hpp"

using namespace sveair;
using namespace sveair::testing;

namespace {

State zero_state(const ParameterSet& ps, double s, double v) {
    State st;
    st.s = s;
    st.v = v;
    const std::size_t n = ps.grid().n_nodes();
    st.e.assign(n, 0.0);
    st.a.assign(n, 0.0);
    st.i.assign(n, 0.0);
    st.removed = ps.N0 - s - v;
    return st;
}

// Endemic constant-rate instance on a short age axis.
ConstRates endemic_rates() {
    ConstRates r;
    r.beta_A = r.beta_I = 5e-6;
    return r;
}

}  // namespace

TEST(ForceOfInfection, ZeroDensities) {
    const auto ps = constant_params(build_grid(0.5, 100), ConstRates{});
    EXPECT_EQ(force_of_infection(zero_state(ps, 1e5, 1e5), ps), 0.0);
}

TEST(ForceOfInfection, ConstantTransmissionTimesMass) {
    ConstRates r;
    r.beta_A = r.beta_I = 3e-7;
    const auto ps = constant_params(build_grid(0.5, 100), r);
    auto st = zero_state(ps, 1e5, 0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (std::size_t j = 0; j < st.a.size(); ++j) {
        st.a[j] = u(rng);
        st.i[j] = u(rng);
    }
    const auto ag = aggregate(st, ps);
    EXPECT_NEAR(force_of_infection(st, ps), 3e-7 * (ag.A + ag.I), 1e-12 * 3e-7 * (ag.A + ag.I));
}

TEST(ForceOfInfection, SteadyStateReproducesBetaStar) {
    const auto ps = table2::parameters(build_grid(0.5, 32400), table2::Contact::C2);
    const auto ss = matching_steady_state(ps);
    const auto st = state_from_steady(ss, ps);
    EXPECT_NEAR(force_of_infection(st, ps) / ss.beta_star, 1.0, 5e-3);
}

TEST(BoundaryValues, ZeroDensities) {
    const auto ps = constant_params(build_grid(0.5, 100), ConstRates{});
    const auto bv = boundary_values(zero_state(ps, 1e5, 1e5), ps);
    EXPECT_EQ(bv.eps, 0.0);
    EXPECT_EQ(bv.alpha, 0.0);
    EXPECT_EQ(bv.iota, 0.0);
}

TEST(BoundaryValues, AllAsymptomaticLeavesOnlyProgressionTerm) {
    ConstRates r;
    r.q = 1.0;
    const auto ps = constant_params(build_grid(0.5, 100), r);
    auto st = zero_state(ps, 1e5, 0);
    st.e.assign(st.e.size(), 2.0);
    EXPECT_EQ(boundary_values(st, ps).iota, 0.0);
    st.a.assign(st.a.size(), 3.0);
    const double expected = 0.5 * static_cast<double>(st.a.size()) * 3.0 * r.chi * (1 - r.xi);
    EXPECT_NEAR(boundary_values(st, ps).iota, expected, 1e-12 * expected);
}

TEST(BoundaryValues, SteadyStateReproducesBoundaryDensities) {
    const auto ps = table2::parameters(build_grid(0.5, 32400), table2::Contact::C2);
    const auto ss = matching_steady_state(ps);
    const auto bv = boundary_values(state_from_steady(ss, ps), ps);
    EXPECT_NEAR(bv.eps / ss.eps_star, 1.0, 5e-3);
    EXPECT_NEAR(bv.alpha / ss.alpha_star, 1.0, 5e-3);
    EXPECT_NEAR(bv.iota / ss.iota_star, 1.0, 5e-3);
}

TEST(Step, SusceptiblesRelaxWithoutVaccinationOrInfection) {
    ConstRates r;
    r.p = 0.0;
    const auto ps = constant_params(build_grid(0.5, 100), r);
    auto st = zero_state(ps, 0.5 * r.N0, 0);
    for (int n = 0; n < 10; ++n) {
        const double expected = st.s + 0.5 * r.mu * (r.N0 - st.s);
        st = step(st, ps);
        EXPECT_DOUBLE_EQ(st.s, expected);
    }
}

TEST(Step, PureTransportMovesMassOneNode) {
    // mu must stay positive; at 1e-300 the decay factor rounds to exactly 1.
    ConstRates r;
    r.k = 0.0;
    r.mu = 1e-300;
    r.beta_A = r.beta_I = 0.0;
    const auto ps = constant_params(build_grid(0.5, 20), r);
    auto st = zero_state(ps, 0, 0);
    st.e[7] = 4.0;
    const auto next = step(st, ps);
    EXPECT_EQ(next.e[8], 4.0);
    EXPECT_EQ(next.e[7], 0.0);
    EXPECT_EQ(next.e[0], 0.0);
}

TEST(Step, OldestNodeIsAbsorbing) {
    ConstRates r;
    r.beta_A = r.beta_I = 0.0;
    const auto ps = constant_params(build_grid(1.0, 10), r);
    auto st = zero_state(ps, 0, 0);
    st.e.back() = 5.0;
    const auto next = step(st, ps);
    for (double x : next.e) EXPECT_EQ(x, 0.0);
}

TEST(Step, StabilityViolationIsConfigurationError) {
    ConstRates r;
    r.k = 2.5;  // h * k = 1.25
    const auto ps = constant_params(build_grid(0.5, 10), r);
    EXPECT_THROW(CharacteristicStepper{ps}, ConfigurationError);
    EXPECT_THROW(step(zero_state(ps, 1, 1), ps), ConfigurationError);
}

TEST(Step, SteadyStateOneStepDriftIsSecondOrder) {
    // One step from the analytic equilibrium moves it by O(h); C is measured.
    std::vector<double> drift;
    for (double h : {0.5, 0.25, 0.125}) {
        const auto ps = constant_params(build_grid(h, 3000), endemic_rates());
        const auto ss = matching_steady_state(ps);
        ASSERT_EQ(ss.kind, SteadyKind::Endemic);
        const auto st = state_from_steady(ss, ps);
        const auto next = step(st, ps);
        double worst = std::max(std::abs(next.s - st.s) / st.s, std::abs(next.v - st.v) / st.v);
        const auto a0 = aggregate(st, ps);
        const auto a1 = aggregate(next, ps);
        worst = std::max({worst, std::abs(a1.E - a0.E) / a0.E, std::abs(a1.A - a0.A) / a0.A,
                          std::abs(a1.I - a0.I) / a0.I});
        drift.push_back(worst);
        RecordProperty("drift_h" + std::to_string(h), std::to_string(worst / (h * h)));
    }
    // One step from the discrete steady state moves it by h times an O(h) defect.
    EXPECT_NEAR(drift[1] / drift[0], 0.25, 0.05) << "C = " << drift[0] / 0.25;
    EXPECT_NEAR(drift[2] / drift[1], 0.25, 0.05) << "C = " << drift[1] / 0.0625;
}

TEST(Aggregate, ZeroDensities) {
    const auto ps = constant_params(build_grid(0.5, 100), ConstRates{});
    const auto ag = aggregate(zero_state(ps, 3e5, 2e5), ps);
    EXPECT_EQ(ag.E, 0.0);
    EXPECT_EQ(ag.A, 0.0);
    EXPECT_EQ(ag.I, 0.0);
    EXPECT_EQ(ag.R, 1e6 - 3e5 - 2e5);
}

TEST(Aggregate, ConstantDensityMass) {
    const auto g = build_grid(0.5, 100);
    const auto ps = constant_params(g, ConstRates{});
    auto st = zero_state(ps, 0, 0);
    st.e.assign(st.e.size(), 3.0);
    EXPECT_NEAR(aggregate(st, ps).E, 3.0 * 0.5 * static_cast<double>(g->n_nodes()), 1e-12);
}

TEST(Aggregate, TotalIsN0) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    const auto ps = constant_params(build_grid(0.5, 100), ConstRates{});
    auto st = zero_state(ps, 4e5, 1e5);
    for (auto* v : {&st.e, &st.a, &st.i}) {
        for (double& x : *v) x = u(rng);
    }
    EXPECT_DOUBLE_EQ(aggregate(st, ps).N, 1e6);
}

TEST(Simulate, DiseaseFreeEquilibriumStaysPut) {
    const auto ps = constant_params(build_grid(0.5, 500), ConstRates{});
    const auto init = state_from_steady(disease_free_state(ps), ps);
    SimulationOptions opt;
    opt.t_max = 200;
    const auto ts = simulate(init, ps, opt);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        EXPECT_NEAR(ts.S[k], ts.S[0], 1e-9 * ts.S[0]);
        EXPECT_NEAR(ts.V[k], ts.V[0], 1e-9 * ts.V[0]);
        EXPECT_EQ(ts.E[k], 0.0);
        EXPECT_EQ(ts.I[k], 0.0);
        EXPECT_NEAR(ts.N[k], ps.N0, 1e-9 * ps.N0);
    }
}

TEST(Simulate, SampleTimesAndSnapshots) {
    const auto ps = constant_params(build_grid(0.5, 100), endemic_rates());
    const auto init = band_initial_state(ps, 4e5, 1e5, 1000, 10, 20);
    SimulationOptions opt;
    opt.t_max = 30.25;
    opt.sample_every = 2;
    opt.snapshot_times = {0.0, 10.0};
    const auto ts = simulate(init, ps, opt);
    for (std::size_t k = 1; k < ts.size(); ++k) EXPECT_GT(ts.t[k], ts.t[k - 1]);
    EXPECT_DOUBLE_EQ(ts.t.back(), 30.5);
    ASSERT_EQ(ts.snapshots.size(), 2u);
    EXPECT_DOUBLE_EQ(ts.snapshots[1].t, 10.0);
    EXPECT_EQ(ts.snapshots[0].e, init.e);
}

TEST(Simulate, RejectsBadOptions) {
    const auto ps = constant_params(build_grid(0.5, 100), ConstRates{});
    const auto init = zero_state(ps, 1, 1);
    SimulationOptions opt;
    opt.t_max = 0;
    EXPECT_THROW(simulate(init, ps, opt), InvalidInput);
    opt.t_max = 10;
    opt.snapshot_times = {20};
    EXPECT_THROW(simulate(init, ps, opt), InvalidInput);
    auto neg = init;
    neg.e[3] = -1;
    EXPECT_THROW(simulate(neg, ps, SimulationOptions{}), InvalidInput);
}

TEST(Simulate, NonFiniteValueAbortsWithStep) {
    ConstRates r;
    r.beta_A = r.beta_I = 1e-3;
    r.N0 = 1e308;
    const auto ps = constant_params(build_grid(0.5, 50), r);
    // Finite at t = 0 (eps ~ 1e295); the newborn infections overflow a step later.
    auto init = zero_state(ps, 1e300, 0);
    init.i.assign(init.i.size(), 1e-3);
    init.removed = 0;
    SimulationOptions opt;
    opt.t_max = 50;
    try {
        simulate(init, ps, opt);
        FAIL() << "expected an aborted run";
    } catch (const SimulationAborted& e) {
        EXPECT_GT(e.step(), 0u);
    }
}

TEST(Simulate, ExtinctionWithoutTransmissionIsMonotone) {
    ConstRates r;
    r.beta_A = r.beta_I = 0.0;
    const auto ps = constant_params(build_grid(0.5, 400), r);
    const auto init = band_initial_state(ps, 2e5, 2e5, 5e4, 20, 80);
    SimulationOptions opt;
    opt.t_max = 300;
    const auto ts = simulate(init, ps, opt);
    for (std::size_t k = 1; k < ts.size(); ++k) {
        EXPECT_LE(ts.E[k] + ts.A[k] + ts.I[k], ts.E[k - 1] + ts.A[k - 1] + ts.I[k - 1]);
    }
}

TEST(Simulate, ConstantRatesFollowCharacteristicSolution) {
    // With no new infections e(t, theta) = e0(theta - t) exp(-(k + mu) t) for
    // theta >= t. The stepper's factor (1 - h(k + mu))^n differs by O(h).
    ConstRates r;
    r.beta_A = r.beta_I = 0.0;
    std::vector<double> err;
    for (double h : {0.5, 0.25, 0.125}) {
        const auto g = build_grid(h, 200);
        const auto ps = constant_params(g, r);
        auto init = zero_state(ps, 1e5, 1e5);
        for (std::size_t j = 0; j < g->n_nodes(); ++j) {
            const double th = g->node(j);
            init.e[j] = std::exp(-0.01 * (th - 50) * (th - 50));
        }
        SimulationOptions opt;
        opt.t_max = 8.0;
        opt.snapshot_times = {8.0};
        const auto ts = simulate(init, ps, opt);
        const auto& e = ts.snapshots.at(0).e;
        const std::size_t shift = static_cast<std::size_t>(std::llround(8.0 / h));
        double worst = 0.0;
        for (std::size_t j = shift; j < g->n_nodes(); ++j) {
            const double exact = init.e[j - shift] * std::exp(-(r.k + r.mu) * 8.0);
            worst = std::max(worst, std::abs(e[j] - exact));
        }
        err.push_back(worst);
    }
    EXPECT_NEAR(err[1] / err[0], 0.5, 0.1);
    EXPECT_NEAR(err[2] / err[1], 0.5, 0.1);
}

TEST(Simulate, ExplicitRemovedBalanceHalvesWithStep) {
    // tol(h) = 2e-3 * h on the balance S+V+E+A+I+R~ - N0.
    for (double h : {0.5, 0.25}) {
        const auto ps = constant_params(build_grid(h, 1000), endemic_rates());
        const auto init = band_initial_state(ps, 3e5, 3e5, 1e4, 100, 300);
        SimulationOptions opt;
        opt.t_max = 300;
        const auto ts = simulate(init, ps, opt);
        EXPECT_LE(max_balance_error(ts, ps.N0), 2e-3 * h);
        EXPECT_EQ(ts.clamped, 0u);
    }
}

TEST(Simulate, RandomInitialDataStayNonnegative) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto ps = constant_params(build_grid(0.25, 600), endemic_rates());
    for (int trial = 0; trial < 10; ++trial) {
        const double s0 = 4e5 * u(rng);
        const double v0 = 4e5 * u(rng);
        const double start = 500 * u(rng);
        auto init = band_initial_state(ps, s0, v0, 5e4 * u(rng), start, start + 1 + 99 * u(rng));
        SimulationOptions opt;
        opt.t_max = 100;
        bool negative = false;
        opt.observer = [&](const State& s) {
            negative |= s.s < 0 || s.v < 0;
            for (std::size_t j = 0; j < s.e.size(); ++j) {
                negative |= s.e[j] < 0 || s.a[j] < 0 || s.i[j] < 0;
            }
        };
        const auto ts = simulate(init, ps, opt);
        EXPECT_FALSE(negative);
        EXPECT_EQ(ts.clamped, 0u);
    }
}

TEST(BandInitialState, MassAndPlacement) {
    const auto g = build_grid(0.5, 32400);
    const auto ps = table2::parameters(g, table2::Contact::C1);
    const auto st = band_initial_state(ps, 2e7, 2e7, 1e6, 7200, 18000);
    const auto ag = aggregate(st, ps);
    EXPECT_NEAR(ag.E, 1e6, 1e-6);
    EXPECT_NEAR(ag.A, 1e6, 1e-6);
    EXPECT_NEAR(ag.I, 1e6, 1e-6);
    EXPECT_EQ(st.e[g->nearest_node(7199.5)], 0.0);
    EXPECT_GT(st.e[g->nearest_node(7200)], 0.0);
    EXPECT_GT(st.e[g->nearest_node(17999.5)], 0.0);
    EXPECT_EQ(st.e[g->nearest_node(18000)], 0.0);
    EXPECT_NEAR(st.removed, 80e6 - 4e7 - 3e6, 1e-6);
}

TEST(BandInitialState, RejectsBadInput) {
    const auto ps = constant_params(build_grid(0.5, 100), ConstRates{});
    EXPECT_THROW(band_initial_state(ps, -1, 0, 1, 0, 10), InvalidInput);
    EXPECT_THROW(band_initial_state(ps, 0, 0, 1, 10, 10), InvalidInput);
    EXPECT_THROW(band_initial_state(ps, 0, 0, 1, 200, 300), InvalidInput);
    EXPECT_THROW(band_initial_state(ps, 1e6, 1e6, 1, 0, 10), InvalidInput);
}
