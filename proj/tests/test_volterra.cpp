#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "sveair/solver.hpp"
#include "sveair/volterra.hpp"

using namespace sveair;
using namespace sveair::testing;

namespace {

ConstRates endemic_rates() {
    ConstRates r;
    r.beta_A = r.beta_I = 5e-6;
    return r;
}

State empty_state(const ParameterSet& ps, double s, double v) {
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

}  // namespace

TEST(SolveRenewal, EveryoneRemovedGivesZeroBoundary) {
    const auto ps = constant_params(build_grid(0.5, 200), endemic_rates());
    const auto path = solve_renewal(empty_state(ps, 0, 0), ps, 100);
    ASSERT_EQ(path.size(), 201u);
    for (std::size_t n = 0; n < path.size(); ++n) {
        EXPECT_EQ(path.beta[n], 0.0);
        EXPECT_EQ(path.alpha[n], 0.0);
        EXPECT_EQ(path.iota[n], 0.0);
        EXPECT_EQ(path.eps[n], 0.0);
    }
}

TEST(SolveRenewal, NoInfectionSourceFollowsClosedForm) {
    // beta = 0: S(t) = S0 e^{-(p+mu)t} + mu N0 (1 - e^{-(p+mu)t})/(p+mu).
    ConstRates r;
    std::vector<double> err;
    for (double h : {0.5, 0.25}) {
        const auto ps = constant_params(build_grid(h, 200), r);
        const double s0 = 3e5;
        const auto path = solve_renewal(empty_state(ps, s0, 1e5), ps, 400);
        double worst = 0.0;
        for (std::size_t n = 0; n < path.size(); ++n) {
            EXPECT_EQ(path.beta[n], 0.0);
            EXPECT_EQ(path.alpha[n], 0.0);
            EXPECT_EQ(path.iota[n], 0.0);
            const double t = path.times[n];
            const double c = r.p + r.mu;
            const double exact = s0 * std::exp(-c * t) + r.mu * r.N0 * -std::expm1(-c * t) / c;
            worst = std::max(worst, std::abs(path.s[n] - exact) / exact);
        }
        err.push_back(worst);
    }
    EXPECT_LT(err[0], 1e-3);
    EXPECT_NEAR(err[1] / err[0], 0.5, 0.05);
}

TEST(SolveRenewal, NonnegativeForRandomInput) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto ps = constant_params(build_grid(0.5, 300), endemic_rates());
    for (int trial = 0; trial < 10; ++trial) {
        auto init = empty_state(ps, 4e5 * u(rng), 4e5 * u(rng));
        for (std::size_t j = 0; j < init.e.size(); ++j) {
            init.e[j] = 50 * u(rng);
            init.a[j] = 50 * u(rng);
            init.i[j] = 50 * u(rng);
        }
        const auto path = solve_renewal(init, ps, 150);
        for (std::size_t n = 0; n < path.size(); ++n) {
            ASSERT_GE(path.beta[n], 0.0);
            ASSERT_GE(path.eps[n], 0.0);
            ASSERT_GE(path.alpha[n], 0.0);
            ASSERT_GE(path.iota[n], 0.0);
            ASSERT_GE(path.s[n], 0.0);
            ASSERT_GE(path.v[n], 0.0);
        }
    }
}

TEST(SolveRenewal, FirstStepMatchesSolverExactly) {
    // At t = 0 both sides evaluate the same quadrature of the same initial data.
    const auto ps = table2::parameters(build_grid(0.5, 32400), table2::Contact::C2);
    const auto init = band_initial_state(ps, 2e7, 2e7, 1e4, 7200, 18000);
    const auto path = solve_renewal(init, ps, 1.0);
    const auto bv = boundary_values(init, ps);
    EXPECT_NEAR(path.beta[0], bv.beta, 1e-12 * bv.beta);
    EXPECT_NEAR(path.iota[0], bv.iota, 1e-12 * bv.iota);
}

TEST(SolveRenewal, RejectsMismatchedInput) {
    const auto ps = constant_params(build_grid(0.5, 100), endemic_rates());
    const auto other = constant_params(build_grid(0.5, 50), endemic_rates());
    EXPECT_THROW(solve_renewal(empty_state(other, 1, 1), ps, 10), InvalidInput);
    EXPECT_THROW(solve_renewal(empty_state(ps, 1, 1), ps, 0), InvalidInput);
}

TEST(SolveRenewal, AgreesWithSolverAndDeviationShrinksAtFirstOrder) {
    std::vector<double> dev;
    for (double h : {0.5, 0.25, 0.125}) {
        const auto ps = constant_params(build_grid(h, 400), endemic_rates());
        const auto init = band_initial_state(ps, 3e5, 3e5, 1e3, 20, 60);
        const auto cmp = compare_with_oracle(init, ps, 60);
        dev.push_back(cmp.max_rel_dev);
    }
    EXPECT_NEAR(dev[1] / dev[0], 0.5, 0.1);
    EXPECT_NEAR(dev[2] / dev[1], 0.5, 0.1);
}

TEST(ReconstructExposed, MatchesSolverDensityWithinFirstOrder) {
    std::vector<double> err;
    for (double h : {0.5, 0.25, 0.125}) {
        const auto g = build_grid(h, 300);
        const auto ps = constant_params(g, endemic_rates());
        const auto init = band_initial_state(ps, 3e5, 3e5, 1e3, 20, 60);
        const double t = 30.0;
        const auto path = solve_renewal(init, ps, t);
        const std::size_t n = path.size() - 1;
        const auto e_oracle = reconstruct_exposed(path, init, ps, n);

        SimulationOptions opt;
        opt.t_max = t;
        opt.snapshot_times = {t};
        const auto ts = simulate(init, ps, opt);
        const auto& e_pde = ts.snapshots.at(0).e;
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < e_pde.size(); ++j) {
            num += std::abs(e_pde[j] - e_oracle[j]);
            den += std::abs(e_oracle[j]);
        }
        err.push_back(num / den);
    }
    // Product vs exponential survival over the elapsed time t: leading error t h (k+mu)^2 / 2.
    const ConstRates r = endemic_rates();
    EXPECT_LT(err[0], 30.0 * 0.5 * (r.k + r.mu) * (r.k + r.mu) / 2);
    EXPECT_NEAR(err[1] / err[0], 0.5, 0.1);
    EXPECT_NEAR(err[2] / err[1], 0.5, 0.1);
}
