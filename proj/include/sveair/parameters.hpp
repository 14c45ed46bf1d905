#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sveair/grid.hpp"

namespace sveair {

/// Scalars and age profiles of the scaled model. All profiles live on one grid.
struct ParameterSet {
    double N0 = 0.0;       // individuals
    double mu = 0.0;       // birth/death rate, per day
    double p = 0.0;        // vaccination rate, per day
    double epsilon = 0.0;  // vaccine effectiveness
    double zeta = 0.0;     // vaccine-induced immunity rate, per day
    double omega = 1.0;    // days per age unit; provenance only, profiles are in days

    AgeProfile beta_A;   // transmission by asymptomatic infectious
    AgeProfile beta_I;   // transmission by symptomatic infectious
    AgeProfile k;        // latent rate
    AgeProfile q;        // proportion of latents becoming asymptomatic
    AgeProfile xi;       // proportion of asymptomatics recovering without symptoms
    AgeProfile chi;      // symptomatic transition rate
    AgeProfile gamma_A;  // recovery, asymptomatic
    AgeProfile gamma_I;  // recovery, symptomatic

    const AgeGrid& grid() const { return k.grid(); }
    const GridPtr& grid_ptr() const { return k.grid_ptr(); }

    /// Throws InvalidInput on any violated range or mismatched grid.
    void validate() const;
};

/// Per-node exit rates of the three age-structured compartments (mu excluded).
struct ExitRates {
    std::vector<double> exposed;      // k
    std::vector<double> asymptomatic; // gamma_A*xi + chi*(1-xi)
    std::vector<double> symptomatic;  // gamma_I
};

ExitRates exit_rates(const ParameterSet& params);

// Reference parameter set behind the table2-c1 / table2-c2 scenarios.
namespace table2 {

inline constexpr double kN0 = 80e6;
inline constexpr double kMu = 4.38356e-5;
inline constexpr double kP = 1e-3;
inline constexpr double kEpsilon = 0.7;
inline constexpr double kZeta = 1.0 / 14.0;
inline constexpr double kOmega = 360.0;
inline constexpr double kXi = 0.5;
inline constexpr double kGammaA = 1.0 / 8.0;
inline constexpr double kGammaI = 1.0 / 14.0;
inline constexpr double kMeanContacts = 16.71;
inline constexpr double kContactWidth = 1e4;
inline constexpr double kShareToA = 1.0 / 5.0;
inline constexpr double kShareToI = 2.0 / 5.0;
inline constexpr double kQFallback = 0.4;

/// Age breakpoints (days) shared by the k and chi tables.
std::span<const double> rate_breakpoints();
std::span<const double> k_values();
std::span<const double> chi_values();

enum class Contact {
    C1,  // centered at 80*omega days
    C2,  // centered at 10*omega days
};

double contact_center(Contact c);

/// Directory holding the bundled CSV tables (compile-time default, overridable
/// with the SVEAIR_DATA_DIR environment variable).
std::filesystem::path data_dir();

/// q from the bundled CSV, or the constant fallback when the file is absent.
AgeProfile load_q(GridPtr grid, const std::optional<std::filesystem::path>& path = std::nullopt);

/// Full parameter set with the chosen contact function.
ParameterSet parameters(GridPtr grid, Contact contact,
                        const std::optional<std::filesystem::path>& q_path = std::nullopt);

/// Same, with the contact centered at an arbitrary age (days).
ParameterSet parameters_with_center(GridPtr grid, double center_days,
                                    const std::optional<std::filesystem::path>& q_path = std::nullopt);

}  // namespace table2

}  // namespace sveair
