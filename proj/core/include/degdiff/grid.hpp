#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "degdiff/params.hpp"

namespace degdiff {

/// Uniform cell-centred grid on [-x_max, x_max].
class Grid {
 public:
  /// Throws DomainError unless x_max > 0 and n_cells >= 16.
  Grid(double x_max, std::size_t n_cells);

  double x_max() const { return x_max_; }
  std::size_t n_cells() const { return centers_.size(); }
  double dx() const { return dx_; }
  std::span<const double> centers() const { return centers_; }
  double center(std::size_t i) const { return centers_[i]; }

 private:
  double x_max_;
  double dx_;
  std::vector<double> centers_;
};

/// Cell values of v at time t.
struct Snapshot {
  double t = 0.0;
  std::vector<double> values;
};

/// Output times and Picard controls for a run.
struct Schedule {
  double t_end = 10.0;
  double dt_initial = 1e-4;
  double dt_max = 1e-2;
  std::vector<double> snapshot_times;  // strictly increasing, inside (0, t_end]
  double picard_tol = 1e-10;
  int picard_max_iters = 100;

  void validate() const;

  /// Log-spaced output times 10^(k / per_decade) for every integer k with
  /// t_min <= 10^(k/per_decade) < t_end, followed by t_end itself. Integer
  /// decades are hit exactly. Returns {t_end} when t_end <= t_min.
  static std::vector<double> log_spaced(double t_min, double t_end, int per_decade);
};

/// One accepted time step.
struct StepRecord {
  double t = 0.0;   // time at the end of the step
  double dt = 0.0;
  int iterations = 0;
  double residual = 0.0;          // final max-norm Picard update
  double min_before_clamp = 0.0;  // smallest value produced by the linear solve
};

struct SolverStats {
  std::vector<StepRecord> steps;
  std::size_t rejected_steps = 0;
  double min_before_clamp = 0.0;  // over the whole run
};

struct Trajectory {
  DivParams params;
  Grid grid;
  std::vector<Snapshot> snapshots;  // snapshots[0].t == 0
  SolverStats stats;

  /// Index of the snapshot recorded at exactly time t, or throws DomainError.
  std::size_t index_of(double t) const;
};

}  // namespace degdiff
