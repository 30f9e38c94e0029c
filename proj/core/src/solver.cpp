#include "degdiff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degdiff/errors.hpp"

namespace degdiff {

namespace {

constexpr double kUndershootTolerance = 1e-12;
constexpr double kBoundaryLevel = 1e-10;
constexpr std::size_t kBoundaryCells = 5;
constexpr double kGrowth = 1.2;

}  // namespace

Snapshot mound_ic(const Grid& grid, double x0) {
  if (!(x0 > 0.0)) throw DomainError("mound_ic: x0 must be positive");
  if (!(x0 < grid.x_max())) throw DomainError("mound_ic: support must lie inside the domain (x0 < x_max)");
  Snapshot s;
  s.values.resize(grid.n_cells());
  const double amp = 3.0 / (4.0 * x0);
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    const double r = grid.center(i) / x0;
    s.values[i] = std::abs(r) <= 1.0 ? amp * (1.0 - r * r) : 0.0;
  }
  return s;
}

Snapshot point_source_ic(const Grid& grid, double width) {
  if (!(width >= 2.0 * grid.dx())) throw DomainError("point_source_ic: width must be at least 2 dx");
  if (!(width < 0.25 * grid.x_max())) throw DomainError("point_source_ic: width must be below x_max / 4");
  Snapshot s = mound_ic(grid, width);
  double total = 0.0;
  for (double v : s.values) total += v;
  const double scale = 1.0 / (total * grid.dx());
  for (double& v : s.values) v *= scale;
  return s;
}

double interface_diffusivity(double vL, double vR, double dx, const DivParams& params) {
  const double g = (vR - vL) / dx;
  const double mean = 0.5 * (vL + vR);
  double d = params.gamma0 == 0.0 ? 1.0 : std::pow(mean, params.gamma0);
  if (params.m > 0.0) {
    d *= std::pow(std::abs(g), params.m);
  } else if (params.m < 0.0) {
    // |g|^m blows up at extrema when m < 0.
    const double eps = 1e-12 * std::max(std::abs(vL), std::abs(vR)) / dx;
    const double mag = std::abs(g) + eps;
    d = mag > 0.0 ? d * std::pow(mag, params.m) : 0.0;
  }
  return d;
}

double interface_flux(double vL, double vR, double dx, const DivParams& params) {
  if (vL == vR) return 0.0;
  return interface_diffusivity(vL, vR, dx, params) * (vR - vL) / dx;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n), x(n);
  double denom = diag[0];
  c[0] = n > 1 ? upper[0] / denom : 0.0;
  x[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * c[i - 1];
    c[i] = i + 1 < n ? upper[i] / denom : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

StepResult step(const Snapshot& state, double dt, const DivParams& params, const Grid& grid, double tol,
                int max_iters) {
  const std::size_t n = grid.n_cells();
  const double dx = grid.dx();
  const double r = dt / (dx * dx);

  StepResult result;
  result.state.t = state.t + dt;
  std::vector<double> iterate = state.values;
  std::vector<double> lower(n), diag(n), upper(n), d_face(n + 1, 0.0);

  for (int k = 1; k <= max_iters; ++k) {
    // Faces 0 and n are the domain ends and carry zero flux.
    for (std::size_t f = 1; f < n; ++f) {
      d_face[f] = interface_diffusivity(iterate[f - 1], iterate[f], dx, params);
    }
    for (std::size_t i = 0; i < n; ++i) {
      lower[i] = -r * d_face[i];
      upper[i] = -r * d_face[i + 1];
      diag[i] = 1.0 + r * (d_face[i] + d_face[i + 1]);
    }
    std::vector<double> next = solve_tridiagonal(lower, diag, upper, state.values);

    double change = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(next[i])) {
        finite = false;
        break;
      }
      change = std::max(change, std::abs(next[i] - iterate[i]));
    }
    result.iterations = k;
    if (!finite) {
      result.failure = "non-finite value in Picard iterate";
      return result;
    }
    result.residual = change;
    iterate = std::move(next);
    if (change < tol) {
      result.converged = true;
      break;
    }
  }
  if (!result.converged) {
    std::ostringstream msg;
    msg << "Picard iteration did not converge in " << max_iters << " sweeps (last update " << result.residual
        << ")";
    result.failure = msg.str();
    return result;
  }

  const double lowest = *std::min_element(iterate.begin(), iterate.end());
  result.min_before_clamp = lowest;
  if (lowest < -kUndershootTolerance) {
    result.converged = false;
    std::ostringstream msg;
    msg << "negative undershoot " << lowest;
    result.failure = msg.str();
    return result;
  }
  for (double& v : iterate) v = std::max(v, 0.0);
  result.state.values = std::move(iterate);
  return result;
}

namespace {

void check_boundary(const Snapshot& s, const Grid& grid) {
  const std::size_t n = grid.n_cells();
  for (std::size_t j = 0; j < kBoundaryCells && j < n; ++j) {
    for (std::size_t i : {j, n - 1 - j}) {
      if (s.values[i] > kBoundaryLevel) {
        std::ostringstream msg;
        msg << "solution reached the domain boundary at t = " << s.t << " (v = " << s.values[i]
            << " at x = " << grid.center(i) << "); enlarge x_max";
        throw NumericalError(msg.str());
      }
    }
  }
}

}  // namespace

Trajectory run(const Snapshot& ic, const DivParams& params, const Grid& grid, const Schedule& schedule) {
  params.validate();
  schedule.validate();
  if (ic.values.size() != grid.n_cells()) throw DomainError("run: initial condition does not match grid");
  for (double v : ic.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("run: initial condition must be finite and >= 0");
  }

  Trajectory traj{params, grid, {}, {}};
  Snapshot current = ic;
  current.t = 0.0;
  check_boundary(current, grid);
  traj.snapshots.push_back(current);

  std::vector<double> targets = schedule.snapshot_times;
  if (targets.empty() || targets.back() != schedule.t_end) targets.push_back(schedule.t_end);

  const double dt_floor = 1e-12 * schedule.t_end;
  double dt = schedule.dt_initial;
  double t = 0.0;
  for (double target : targets) {
    while (t < target) {
      const bool lands = dt >= target - t;
      const double h = lands ? target - t : dt;
      StepResult res = step(current, h, params, grid, schedule.picard_tol, schedule.picard_max_iters);
      if (!res.converged) {
        ++traj.stats.rejected_steps;
        dt = 0.5 * h;
        if (dt < dt_floor) {
          std::ostringstream msg;
          msg << "time step underflow at t = " << t << " (dt = " << dt << "): " << res.failure;
          throw NumericalError(msg.str());
        }
        continue;
      }
      t = lands ? target : t + h;
      res.state.t = t;
      traj.stats.steps.push_back({t, h, res.iterations, res.residual, res.min_before_clamp});
      traj.stats.min_before_clamp = std::min(traj.stats.min_before_clamp, res.min_before_clamp);
      current = std::move(res.state);
      check_boundary(current, grid);
      if (!lands) dt = std::min(kGrowth * dt, schedule.dt_max);
    }
    traj.snapshots.push_back(current);
  }
  return traj;
}

}  // namespace degdiff
