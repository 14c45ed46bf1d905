#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sveair {

/// Raised for any malformed mesh, profile, or parameter input.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform age mesh theta_j = j*h, j = 0..n_nodes-1. The time stepper uses the
/// same h, so one time step moves every cohort exactly one node.
class AgeGrid {
public:
    AgeGrid(double h, std::size_t n_nodes);

    double h() const { return h_; }
    std::size_t n_nodes() const { return n_nodes_; }
    double theta_max() const { return static_cast<double>(n_nodes_ - 1) * h_; }
    double node(std::size_t j) const { return static_cast<double>(j) * h_; }

    /// Index of the node closest to theta (clamped to the mesh).
    std::size_t nearest_node(double theta) const;

    bool operator==(const AgeGrid& other) const = default;

private:
    double h_;
    std::size_t n_nodes_;
};

using GridPtr = std::shared_ptr<const AgeGrid>;

/// n_nodes = floor(theta_max / h) + 1.
GridPtr build_grid(double h, double theta_max);

enum class Units {
    Rate,          // per day
    Proportion,    // dimensionless, in [0, 1]
    Density,       // individuals per day of age
    Transmission,  // per individual per day
};

const char* to_string(Units units);

/// Throws InvalidInput if `value` violates the range of `units`.
void check_unit_range(Units units, double value, const std::string& what);

/// A function of age sampled on every node of a shared AgeGrid.
class AgeProfile {
public:
    AgeProfile(GridPtr grid, std::vector<double> values, Units units);

    static AgeProfile constant(GridPtr grid, double value, Units units);
    static AgeProfile zeros(GridPtr grid, Units units);

    const AgeGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    Units units() const { return units_; }

    std::span<const double> values() const { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    std::size_t size() const { return values_.size(); }

    /// Left-rectangle mass h * sum_j values[j] over every node.
    double integral() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    Units units_;
};

/// True when both grids have the same step and node count.
bool same_grid(const AgeGrid& a, const AgeGrid& b);

/// Piecewise-constant table. values[i] holds on [breakpoints[i-1], breakpoints[i]);
/// a node sitting exactly on a breakpoint takes the value of the interval it opens.
AgeProfile sample_step_function(std::span<const double> breakpoints,
                                std::span<const double> values, GridPtr grid,
                                Units units);

/// Gaussian contact bump K * exp(-((theta - center) / width)^2), with K chosen
/// so that grid_average() of the result equals mean_contacts.
AgeProfile sample_contact(double center_age, double mean_contacts, double width,
                          GridPtr grid);

/// Left-rectangle average over [0, theta_max]: h * sum_{j < n-1} v_j / theta_max.
double grid_average(const AgeProfile& profile);

/// Two-column CSV (age_days,value). Linear interpolation onto the grid with
/// constant extrapolation. A repeated age marks a jump; the node at that age
/// takes the later value.
AgeProfile load_profile_csv(const std::filesystem::path& path, GridPtr grid,
                            Units units);

/// F[0] = 1, F[j] = exp(-h * sum_{m<j} (rate[m] + extra)).
std::vector<double> survival_factors(std::span<const double> rate, double extra,
                                     double h);

AgeProfile survival(const AgeProfile& rate, double extra_const);

}  // namespace sveair
