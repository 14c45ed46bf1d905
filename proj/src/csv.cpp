#include "sveair/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sveair {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
    if (header.size() != columns.size()) throw InvalidInput("csv: header/column count mismatch");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != rows) throw InvalidInput("csv: columns of unequal length");
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");

    std::string line;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) line += ',';
        line += header[c];
    }
    line += '\n';
    out << line;
    for (std::size_t r = 0; r < rows; ++r) {
        line.clear();
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) line += ',';
            line += format_double(columns[c][r]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw InvalidInput("write failed: " + path.string());
}

std::vector<double> CsvTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] != name) continue;
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r[c]);
        return out;
    }
    throw InvalidInput("csv: no column named " + name);
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s, const std::filesystem::path& path, std::size_t line) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    // from_chars does not accept a leading '+'.
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr != last) {
        throw InvalidInput(path.string() + ":" + std::to_string(line) + ": not a number: '" + s +
                           "'");
    }
    return x;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path.string());
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw InvalidInput(path.string() + ":" + std::to_string(lineno) +
                               ": wrong number of fields");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_number(c, path, lineno));
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw InvalidInput(path.string() + ": empty file");
    return t;
}

void write_time_series(const std::filesystem::path& path, const TimeSeries& ts) {
    write_csv(path, {"t", "S", "V", "E", "A", "I", "R", "N", "beta", "eps", "alpha", "iota"},
              {ts.t, ts.S, ts.V, ts.E, ts.A, ts.I, ts.R, ts.N, ts.beta, ts.eps, ts.alpha, ts.iota});
}

void write_snapshot(const std::filesystem::path& path, const DensitySnapshot& snap,
                    const AgeGrid& grid) {
    std::vector<double> theta(snap.e.size());
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = grid.node(j);
    write_csv(path, {"theta", "e", "a", "i"}, {theta, snap.e, snap.a, snap.i});
}

void write_r0(const std::filesystem::path& path, const R0Breakdown& r0, double beta_star) {
    const double r_a[] = {r0.r_a};
    const double r_i[] = {r0.r_i};
    const double pre[] = {r0.prefactor};
    const double r[] = {r0.r0};
    const double b[] = {beta_star};
    write_csv(path, {"r_a", "r_i", "prefactor", "r0", "beta_star"}, {r_a, r_i, pre, r, b});
}

void write_renewal(const std::filesystem::path& path, const RenewalPath& p) {
    write_csv(path, {"t", "beta", "eps", "alpha", "iota", "S", "V"},
              {p.times, p.beta, p.eps, p.alpha, p.iota, p.s, p.v});
}

void write_oracle_compare(const std::filesystem::path& path, std::span<const double> t,
                          std::span<const double> beta_pde, std::span<const double> beta_volterra,
                          std::span<const double> rel_dev) {
    write_csv(path, {"t", "beta_pde", "beta_volterra", "rel_dev"},
              {t, beta_pde, beta_volterra, rel_dev});
}

void write_lyapunov(const std::filesystem::path& path, std::span<const double> t,
                    std::span<const double> L, std::span<const double> dL,
                    std::span<const double> flag) {
    write_csv(path, {"t", "L", "dL_estimate", "violation_flag"}, {t, L, dL, flag});
}

}  // namespace sveair
