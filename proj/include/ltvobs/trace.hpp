#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ltvobs/mathkit.hpp"

namespace ltvobs {

/// One logged sampling instant: true and estimated states and parameters,
/// estimator internals worth plotting, and the health flags.
struct TraceRecord {
    double t = 0.0;
    Vec x;
    Vec y;
    Vec x_hat;
    double theta = 0.0;
    double theta_hat = 0.0;
    double theta_err = 0.0;  // theta - theta_hat
    double omega_hat = 0.0;
    double k_hat = 0.0;
    double a1_hat = 0.0;
    double a2_hat = 0.0;
    double Delta = 0.0;
    double P = 0.0;
    double w = 1.0;
    double w_c = 0.0;
    bool v_floor_active = false;
    bool tc_reached = false;
};

std::vector<std::string> csv_header(std::size_t n);

/// Writes the fixed-schema CSV: header row, then one row per record with 12
/// significant digits and flags as 0/1.
void write_csv(const std::vector<TraceRecord>& records, std::ostream& os);
void write_csv(const std::vector<TraceRecord>& records, const std::string& path);

/// Column-oriented readback used by the plotting helper and the round-trip
/// tests.
struct CsvTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    const std::vector<double>& column(const std::string& name) const;
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

CsvTable read_csv(const std::string& path);

}  // namespace ltvobs
