#include "sveair/parameters.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <iostream>

#ifndef SVEAIR_DEFAULT_DATA_DIR
#define SVEAIR_DEFAULT_DATA_DIR "data"
#endif

namespace sveair {

namespace {

void check_scalar(double v, const char* name, bool unit_interval = false) {
    if (!std::isfinite(v) || v < 0.0) {
        throw InvalidInput(std::string("parameter ") + name + " must be finite and nonnegative");
    }
    if (unit_interval && v > 1.0) {
        throw InvalidInput(std::string("parameter ") + name + " must lie in [0, 1]");
    }
}

void check_profile(const AgeProfile& prof, const AgeGrid& grid, Units units, const char* name) {
    if (!same_grid(prof.grid(), grid)) {
        throw InvalidInput(std::string("profile ") + name + " is on a different grid");
    }
    for (double v : prof.values()) check_unit_range(units, v, std::string("profile ") + name);
}

}  // namespace

void ParameterSet::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidInput("parameter mu must be positive");
    check_scalar(N0, "N0");
    check_scalar(p, "p");
    check_scalar(epsilon, "epsilon", true);
    check_scalar(zeta, "zeta");
    if (!(omega > 0.0)) throw InvalidInput("parameter omega must be positive");

    const AgeGrid& g = grid();
    check_profile(beta_A, g, Units::Transmission, "beta_A");
    check_profile(beta_I, g, Units::Transmission, "beta_I");
    check_profile(k, g, Units::Rate, "k");
    check_profile(q, g, Units::Proportion, "q");
    check_profile(xi, g, Units::Proportion, "xi");
    check_profile(chi, g, Units::Rate, "chi");
    check_profile(gamma_A, g, Units::Rate, "gamma_A");
    check_profile(gamma_I, g, Units::Rate, "gamma_I");
}

ExitRates exit_rates(const ParameterSet& params) {
    const std::size_t n = params.grid().n_nodes();
    ExitRates r;
    r.exposed.assign(params.k.values().begin(), params.k.values().end());
    r.asymptomatic.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = params.xi[j];
        r.asymptomatic[j] = params.gamma_A[j] * xi + params.chi[j] * (1.0 - xi);
    }
    r.symptomatic.assign(params.gamma_I.values().begin(), params.gamma_I.values().end());
    return r;
}

namespace table2 {

namespace {
constexpr std::array<double, 5> kBreaks = {30 * 360.0, 40 * 360.0, 50 * 360.0, 60 * 360.0,
                                           70 * 360.0};
constexpr std::array<double, 6> kK = {1 / 4.0, 1 / 4.8, 1 / 4.8, 1 / 5.5, 1 / 3.1, 1 / 6.0};
constexpr std::array<double, 6> kChi = {1 / 5.0, 1 / 5.8, 1 / 5.8, 1 / 6.5, 1 / 4.1, 1 / 7.0};
}  // namespace

std::span<const double> rate_breakpoints() { return kBreaks; }
std::span<const double> k_values() { return kK; }
std::span<const double> chi_values() { return kChi; }

double contact_center(Contact c) {
    return c == Contact::C1 ? 80.0 * kOmega : 10.0 * kOmega;
}

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("SVEAIR_DATA_DIR"); env && *env) return env;
    return SVEAIR_DEFAULT_DATA_DIR;
}

AgeProfile load_q(GridPtr grid, const std::optional<std::filesystem::path>& path) {
    const auto file = path.value_or(data_dir() / "q_asymptomatic_proportion.csv");
    if (!std::filesystem::exists(file)) {
        std::cerr << "warning: " << file.string() << " not found, using constant q = "
                  << kQFallback << "\n";
        return AgeProfile::constant(std::move(grid), kQFallback, Units::Proportion);
    }
    return load_profile_csv(file, std::move(grid), Units::Proportion);
}

ParameterSet parameters_with_center(GridPtr grid, double center_days,
                                    const std::optional<std::filesystem::path>& q_path) {
    const AgeProfile contact = sample_contact(center_days, kMeanContacts, kContactWidth, grid);
    std::vector<double> bA(grid->n_nodes());
    std::vector<double> bI(grid->n_nodes());
    for (std::size_t j = 0; j < bA.size(); ++j) {
        bA[j] = contact[j] * kShareToA / kN0;
        bI[j] = contact[j] * kShareToI / kN0;
    }

    ParameterSet ps{
        .N0 = kN0,
        .mu = kMu,
        .p = kP,
        .epsilon = kEpsilon,
        .zeta = kZeta,
        .omega = kOmega,
        .beta_A = AgeProfile(grid, std::move(bA), Units::Transmission),
        .beta_I = AgeProfile(grid, std::move(bI), Units::Transmission),
        .k = sample_step_function(kBreaks, kK, grid, Units::Rate),
        .q = load_q(grid, q_path),
        .xi = AgeProfile::constant(grid, kXi, Units::Proportion),
        .chi = sample_step_function(kBreaks, kChi, grid, Units::Rate),
        .gamma_A = AgeProfile::constant(grid, kGammaA, Units::Rate),
        .gamma_I = AgeProfile::constant(grid, kGammaI, Units::Rate),
    };
    ps.validate();
    return ps;
}

ParameterSet parameters(GridPtr grid, Contact contact,
                        const std::optional<std::filesystem::path>& q_path) {
    return parameters_with_center(std::move(grid), contact_center(contact), q_path);
}

}  // namespace table2

}  // namespace sveair
