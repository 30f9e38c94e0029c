#pragma once

#include <string>

#include "degdiff/grid.hpp"
#include "degdiff/params.hpp"

namespace degdiff {

/// Unit-mass inverted parabola (3/(4 x0)) (1 - (x/x0)^2) on |x| <= x0, sampled
/// at cell centres. Requires 0 < x0 < grid.x_max().
Snapshot mound_ic(const Grid& grid, double x0);

/// Narrow mound of half-width `width`, rescaled so that sum(v) dx == 1.
/// Requires 2 dx <= width < x_max / 4.
Snapshot point_source_ic(const Grid& grid, double width);

/// Flux F = D * g between two neighbouring cells, with g = (vR - vL)/dx and
/// D = ((vL+vR)/2)^gamma0 (|g| + eps_g)^m. eps_g is nonzero only for m < 0.
double interface_flux(double vL, double vR, double dx, const DivParams& params);

/// Lagged diffusivity D of interface_flux.
double interface_diffusivity(double vL, double vR, double dx, const DivParams& params);

struct StepResult {
  Snapshot state;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;          // last max-norm Picard update
  double min_before_clamp = 0.0;
  std::string failure;            // empty on success
};

/// One backward-Euler step of v_t = (v^gamma0 |v_x|^m v_x)_x in conservative
/// form with zero-flux ends. Picard iteration lags D and solves a tridiagonal
/// system for v each sweep until the max-norm update drops below tol.
/// Never throws on convergence failure; check StepResult::converged.
StepResult step(const Snapshot& state, double dt, const DivParams& params, const Grid& grid, double tol,
                int max_iters = 100);

/// Adaptive time integration from `ic` to schedule.t_end. Records `ic` and
/// every schedule.snapshot_times entry (stepping exactly onto each one).
/// Throws NumericalError when dt underflows or the solution reaches the
/// outer five cells on either side.
Trajectory run(const Snapshot& ic, const DivParams& params, const Grid& grid, const Schedule& schedule);

/// Thomas algorithm for a tridiagonal system; lower[0] and upper[n-1] are ignored.
/// Exposed for testing.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

}  // namespace degdiff
