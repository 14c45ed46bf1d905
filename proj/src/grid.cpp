#include "sveair/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sveair {

AgeGrid::AgeGrid(double h, std::size_t n_nodes) : h_(h), n_nodes_(n_nodes) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw InvalidInput("invalid grid: step h must be positive and finite");
    }
    if (n_nodes == 0) {
        throw InvalidInput("invalid grid: at least one node is required");
    }
}

std::size_t AgeGrid::nearest_node(double theta) const {
    if (theta <= 0.0) return 0;
    const auto j = static_cast<std::size_t>(std::llround(theta / h_));
    return std::min(j, n_nodes_ - 1);
}

GridPtr build_grid(double h, double theta_max) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw InvalidInput("invalid grid: step h must be positive");
    }
    if (!(theta_max >= h) || !std::isfinite(theta_max)) {
        throw InvalidInput("invalid grid: theta_max must be at least h");
    }
    // A ratio like 32400/0.05 may land a hair under the integer in binary.
    const double steps = std::floor(theta_max / h * (1.0 + 1e-12));
    return std::make_shared<const AgeGrid>(h, static_cast<std::size_t>(steps) + 1);
}

const char* to_string(Units units) {
    switch (units) {
        case Units::Rate: return "rate";
        case Units::Proportion: return "proportion";
        case Units::Density: return "density";
        case Units::Transmission: return "transmission";
    }
    return "unknown";
}

void check_unit_range(Units units, double value, const std::string& what) {
    if (!std::isfinite(value)) {
        throw InvalidInput(what + ": non-finite value");
    }
    if (value < 0.0) {
        throw InvalidInput(what + ": negative value for " + to_string(units) + " profile");
    }
    if (units == Units::Proportion && value > 1.0) {
        throw InvalidInput(what + ": proportion exceeds 1");
    }
}

AgeProfile::AgeProfile(GridPtr grid, std::vector<double> values, Units units)
    : grid_(std::move(grid)), values_(std::move(values)), units_(units) {
    if (!grid_) throw InvalidInput("profile requires a grid");
    if (values_.size() != grid_->n_nodes()) {
        throw InvalidInput("profile length does not match grid node count");
    }
    for (double v : values_) check_unit_range(units_, v, "profile");
}

AgeProfile AgeProfile::constant(GridPtr grid, double value, Units units) {
    const std::size_t n = grid->n_nodes();
    return AgeProfile(std::move(grid), std::vector<double>(n, value), units);
}

AgeProfile AgeProfile::zeros(GridPtr grid, Units units) {
    return constant(std::move(grid), 0.0, units);
}

double AgeProfile::integral() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return grid_->h() * sum;
}

bool same_grid(const AgeGrid& a, const AgeGrid& b) { return a == b; }

AgeProfile sample_step_function(std::span<const double> breakpoints,
                                std::span<const double> values, GridPtr grid,
                                Units units) {
    if (values.size() != breakpoints.size() + 1) {
        throw InvalidInput("step function needs exactly one more value than breakpoints");
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > breakpoints[i - 1])) {
            throw InvalidInput("step function breakpoints must be strictly ascending");
        }
    }
    for (double v : values) check_unit_range(units, v, "step function");

    // Nodes are j*h computed in floating point; snap to a breakpoint within
    // a tiny fraction of h so j*h == b lands on the right-hand interval.
    const double snap = grid->h() * 1e-6;
    std::vector<double> out(grid->n_nodes());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double theta = grid->node(j) + snap;
        const auto idx = std::upper_bound(breakpoints.begin(), breakpoints.end(), theta) -
                         breakpoints.begin();
        out[j] = values[static_cast<std::size_t>(idx)];
    }
    return AgeProfile(std::move(grid), std::move(out), units);
}

double grid_average(const AgeProfile& profile) {
    const auto v = profile.values();
    if (v.size() < 2) throw InvalidInput("grid average needs at least two nodes");
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < v.size(); ++j) sum += v[j];
    return sum / static_cast<double>(v.size() - 1);
}

AgeProfile sample_contact(double center_age, double mean_contacts, double width,
                          GridPtr grid) {
    if (!(width > 0.0)) throw InvalidInput("contact width must be positive");
    if (!(mean_contacts > 0.0)) throw InvalidInput("mean contacts must be positive");
    if (grid->n_nodes() < 2) throw InvalidInput("contact function needs a non-degenerate grid");

    std::vector<double> bump(grid->n_nodes());
    for (std::size_t j = 0; j < bump.size(); ++j) {
        const double z = (grid->node(j) - center_age) / width;
        bump[j] = std::exp(-z * z);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < bump.size(); ++j) sum += bump[j];
    const double avg = sum / static_cast<double>(bump.size() - 1);
    if (!(avg > 0.0)) throw InvalidInput("contact bump vanishes on the grid");
    const double scale = mean_contacts / avg;
    for (double& c : bump) c *= scale;
    return AgeProfile(std::move(grid), std::move(bump), Units::Rate);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

AgeProfile load_profile_csv(const std::filesystem::path& path, GridPtr grid, Units units) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open profile file: " + path.string());

    std::vector<double> ages;
    std::vector<double> vals;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        if (line_no == 1 && body == "age_days,value") continue;
        const auto comma = body.find(',');
        double age = 0.0;
        double val = 0.0;
        if (comma == std::string_view::npos || !parse_double(body.substr(0, comma), age) ||
            !parse_double(body.substr(comma + 1), val)) {
            throw InvalidInput(path.string() + ":" + std::to_string(line_no) +
                               ": expected two numeric columns");
        }
        check_unit_range(units, val, path.string() + ":" + std::to_string(line_no));
        if (!ages.empty()) {
            if (age < ages.back()) {
                throw InvalidInput(path.string() + ":" + std::to_string(line_no) +
                                   ": ages must be ascending");
            }
            if (ages.size() >= 2 && age == ages.back() && age == ages[ages.size() - 2]) {
                throw InvalidInput(path.string() + ":" + std::to_string(line_no) +
                                   ": an age may repeat at most once (a jump)");
            }
        }
        ages.push_back(age);
        vals.push_back(val);
    }
    if (ages.empty()) throw InvalidInput("profile file has no data rows: " + path.string());

    std::vector<double> out(grid->n_nodes());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double theta = grid->node(j);
        if (theta <= ages.front()) {
            // At a jump located at the first age the later value applies.
            out[j] = (theta == ages.front() && ages.size() > 1 && ages[1] == ages[0]) ? vals[1]
                                                                                       : vals[0];
            continue;
        }
        if (theta >= ages.back()) {
            out[j] = vals.back();
            continue;
        }
        const auto hi = static_cast<std::size_t>(
            std::upper_bound(ages.begin(), ages.end(), theta) - ages.begin());
        const std::size_t lo = hi - 1;
        const double w = (theta - ages[lo]) / (ages[hi] - ages[lo]);
        out[j] = vals[lo] + w * (vals[hi] - vals[lo]);
    }
    return AgeProfile(std::move(grid), std::move(out), units);
}

std::vector<double> survival_factors(std::span<const double> rate, double extra, double h) {
    if (extra < 0.0) throw InvalidInput("survival: negative extra rate");
    std::vector<double> out(rate.size());
    // Neumaier-compensated running hazard; the plain sum drifts by O(j eps).
    double hazard = 0.0, carry = 0.0;
    for (std::size_t j = 0; j < rate.size(); ++j) {
        if (j > 0) {
            const double r = rate[j - 1];
            if (r < 0.0) throw InvalidInput("survival: negative rate");
            const double x = (r + extra) * h;
            const double t = hazard + x;
            carry += std::abs(hazard) >= std::abs(x) ? (hazard - t) + x : (x - t) + hazard;
            hazard = t;
        }
        out[j] = std::exp(-(hazard + carry));
    }
    if (!rate.empty() && rate.back() < 0.0) throw InvalidInput("survival: negative rate");
    return out;
}

AgeProfile survival(const AgeProfile& rate, double extra_const) {
    return AgeProfile(rate.grid_ptr(),
                      survival_factors(rate.values(), extra_const, rate.grid().h()),
                      Units::Proportion);
}

}  // namespace sveair
