#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sveair/grid.hpp"
#include "sveair/reproduction.hpp"
#include "sveair/solver.hpp"
#include "sveair/volterra.hpp"

namespace sveair {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Writes a numeric table with LF line endings. All columns must have equal length.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Column by header name; throws InvalidInput if absent.
    std::vector<double> column(const std::string& name) const;
};

/// Reads a numeric CSV with a header line.
CsvTable read_csv(const std::filesystem::path& path);

/// t,S,V,E,A,I,R,N,beta,eps,alpha,iota
void write_time_series(const std::filesystem::path& path, const TimeSeries& ts);

/// theta,e,a,i
void write_snapshot(const std::filesystem::path& path, const DensitySnapshot& snap,
                    const AgeGrid& grid);

/// r_a,r_i,prefactor,r0,beta_star
void write_r0(const std::filesystem::path& path, const R0Breakdown& r0, double beta_star);

/// t,beta,eps,alpha,iota,S,V
void write_renewal(const std::filesystem::path& path, const RenewalPath& path_values);

/// t,beta_pde,beta_volterra,rel_dev
void write_oracle_compare(const std::filesystem::path& path, std::span<const double> t,
                          std::span<const double> beta_pde, std::span<const double> beta_volterra,
                          std::span<const double> rel_dev);

/// t,L,dL_estimate,violation_flag
void write_lyapunov(const std::filesystem::path& path, std::span<const double> t,
                    std::span<const double> L, std::span<const double> dL,
                    std::span<const double> flag);

}  // namespace sveair
