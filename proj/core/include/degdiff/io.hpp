#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "degdiff/diagnostics.hpp"
#include "degdiff/grid.hpp"

namespace degdiff {

/// Shortest-independent fixed format: 17 significant digits, so parsing the
/// text back yields the identical double.
std::string format_double(double value);

/// Parses a number written by format_double (or any strtod-compatible text).
double parse_double(const std::string& text);

/// `t,x,v` rows, one per cell per recorded time.
void write_snapshots_csv(std::ostream& os, const Trajectory& traj);

struct SnapshotTable {
  std::vector<double> x;              // cell centres, from the first block
  std::vector<Snapshot> snapshots;
};

/// Inverse of write_snapshots_csv. Throws ConfigError on malformed input.
SnapshotTable read_snapshots_csv(std::istream& is);

/// `t,x_front` rows.
void write_front_csv(std::ostream& os, const FrontTrace& trace);
FrontTrace read_front_csv(std::istream& is);

/// `xi,f,fprime` rows for `points` equally spaced xi in [-1, 1]. Singular
/// endpoint slopes are written as -inf / inf.
void write_profile_csv(std::ostream& os, double gamma0, double m, int points);

/// Log-log front table: t, x_front, log_t, log_x_front, fitted and
/// theoretical lines through the fit's centroid.
void write_loglog_front_csv(std::ostream& os, const FrontTrace& trace, const FrontFit& fit, double nu);

/// `{"q":..,"zeta":..,"epsilon0":..,"I":[..]}` plus T and radii.
std::string degiorgi_report_json(const DeGiorgiReport& report);

}  // namespace degdiff
