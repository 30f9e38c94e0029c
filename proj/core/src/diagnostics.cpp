#include "degdiff/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "degdiff/errors.hpp"

namespace degdiff {

double mass(const Snapshot& snapshot, const Grid& grid) {
  double total = 0.0;
  for (double v : snapshot.values) total += v;
  return total * grid.dx();
}

double max_relative_mass_drift(const Trajectory& traj) {
  if (traj.snapshots.empty()) return 0.0;
  const double m0 = mass(traj.snapshots.front(), traj.grid);
  if (m0 == 0.0) return 0.0;
  double drift = 0.0;
  for (const auto& s : traj.snapshots) drift = std::max(drift, std::abs(mass(s, traj.grid) - m0) / std::abs(m0));
  return drift;
}

namespace {

// Outermost crossing of `level` on one side; `dir` is +1 (right) or -1 (left).
double outer_crossing(const std::vector<double>& v, const Grid& grid, double level, int dir) {
  const auto n = static_cast<long>(v.size());
  long i = dir > 0 ? n - 1 : 0;
  const long stop = dir > 0 ? -1 : n;
  for (; i != stop; i -= dir) {
    if (v[static_cast<std::size_t>(i)] > level) break;
  }
  if (i == stop) return 0.0;
  const double xi = grid.center(static_cast<std::size_t>(i));
  const long next = i + dir;
  if (next < 0 || next >= n) return std::abs(xi);
  const double vi = v[static_cast<std::size_t>(i)];
  const double vn = v[static_cast<std::size_t>(next)];
  const double frac = (vi - level) / (vi - vn);
  return std::abs(xi + dir * frac * grid.dx());
}

}  // namespace

FrontTrace detect_front(const Trajectory& traj, double threshold, bool relative) {
  if (!(threshold > 0.0)) throw DomainError("detect_front: threshold must be positive");
  double global_max = 0.0;
  for (const auto& s : traj.snapshots) {
    for (double v : s.values) global_max = std::max(global_max, v);
  }
  if (!relative && global_max > 0.0 && threshold >= global_max) {
    std::ostringstream msg;
    msg << "detect_front: threshold " << threshold << " is not below the global maximum " << global_max;
    throw DomainError(msg.str());
  }

  FrontTrace trace;
  trace.threshold = threshold;
  trace.relative = relative;
  double running = 0.0;
  for (const auto& s : traj.snapshots) {
    const double vmax = s.values.empty() ? 0.0 : *std::max_element(s.values.begin(), s.values.end());
    double x = 0.0;
    if (vmax > 0.0) {
      const double level = relative ? threshold * vmax : threshold;
      x = std::max(outer_crossing(s.values, traj.grid, level, +1), outer_crossing(s.values, traj.grid, level, -1));
    }
    running = std::max(running, x);
    trace.times.push_back(s.t);
    trace.x_front.push_back(running);
  }
  return trace;
}

FrontFit fit_front_exponent(const FrontTrace& trace, double t_lo, double t_hi) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw DomainError("fit_front_exponent: need 0 < t_lo < t_hi");
  std::vector<double> lx, ly;
  const double slack = 1e-12 * t_hi;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (t < t_lo - slack || t > t_hi + slack) continue;
    if (!(trace.x_front[i] > 0.0)) throw DomainError("fit_front_exponent: zero front position inside the window");
    lx.push_back(std::log(t));
    ly.push_back(std::log(trace.x_front[i]));
  }
  if (lx.size() < 5) {
    throw DomainError("fit_front_exponent: insufficient points in window (" + std::to_string(lx.size()) +
                      " < 5)");
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  FrontFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.points = lx.size();
  return fit;
}

ShiftedDistance selfsim_distance(const Trajectory& traj, const SelfSimilarSolution& s, double t, double max_shift) {
  if (!(t > 0.0)) throw DomainError("selfsim_distance: t must be positive");
  const Snapshot& snap = traj.snapshots[traj.index_of(t)];
  const Grid& grid = traj.grid;
  auto l1 = [&](double shift) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
      acc += std::abs(snap.values[i] - s.evaluate(grid.center(i), t + shift));
    }
    return acc * grid.dx();
  };

  constexpr int kScan = 200;
  double best_shift = 0.0;
  double best = l1(0.0);
  for (int k = 1; k <= kScan; ++k) {
    const double shift = max_shift * k / kScan;
    const double d = l1(shift);
    if (d < best) {
      best = d;
      best_shift = shift;
    }
  }
  // Golden-section refinement on the bracketing scan cell.
  const double h = max_shift / kScan;
  double a = std::max(0.0, best_shift - h);
  double b = std::min(max_shift, best_shift + h);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = l1(c), fd = l1(d);
  for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = l1(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = l1(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fmid = l1(mid);
  if (fmid < best) {
    best = fmid;
    best_shift = mid;
  }
  return {best, best_shift};
}

MappingResidual mapping_residual(const Trajectory& traj, const NonDivParams& nondiv, double threshold) {
  const DivParams expected = to_divergence(nondiv);
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  if (!close(traj.params.gamma0, expected.gamma0) || !close(traj.params.m, expected.m) ||
      !close(traj.params.q0, expected.q0)) {
    std::ostringstream msg;
    msg << "mapping_residual: non-divergence parameters map to (gamma0=" << expected.gamma0
        << ", m=" << expected.m << ", q0=" << expected.q0 << ") but the trajectory has (gamma0="
        << traj.params.gamma0 << ", m=" << traj.params.m << ", q0=" << traj.params.q0 << ")";
    throw DomainError(msg.str());
  }
  if (traj.snapshots.size() < 3) throw DomainError("mapping_residual: need at least 3 snapshots");

  const double alpha = expected.alpha;
  const double q0 = expected.q0;
  const double coeff = 0.5 * nondiv.sigma2;
  const double dx = traj.grid.dx();
  const std::size_t n = traj.grid.n_cells();

  std::vector<std::vector<double>> u;
  u.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) u.push_back(map_v_to_u(s.values, alpha));

  MappingResidual out;
  for (std::size_t k = 1; k + 1 < u.size(); ++k) {
    const double h1 = traj.snapshots[k].t - traj.snapshots[k - 1].t;
    const double h2 = traj.snapshots[k + 1].t - traj.snapshots[k].t;
    const double wm = -h2 / (h1 * (h1 + h2));
    const double w0 = (h2 - h1) / (h1 * h2);
    const double wp = h1 / (h2 * (h1 + h2));
    const auto& uk = u[k];
    const double umax = *std::max_element(uk.begin(), uk.end());
    const double level = 10.0 * threshold * umax;

    double worst = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (!(uk[i] > level) || umax == 0.0) continue;
      const double ut = q0 * (wm * u[k - 1][i] + w0 * uk[i] + wp * u[k + 1][i]);
      const double ux = (uk[i + 1] - uk[i - 1]) / (2.0 * dx);
      const double uxx = (uk[i + 1] - 2.0 * uk[i] + uk[i - 1]) / (dx * dx);
      const double lu = ut - coeff * std::pow(uk[i], nondiv.gamma) * std::pow(std::abs(ux), nondiv.beta) * uxx;
      worst = std::max(worst, std::abs(lu));
      ++used;
    }
    out.times.push_back(traj.snapshots[k].t);
    out.residual.push_back(worst);
    out.cells_used.push_back(used);
  }
  return out;
}

MaxPrincipleVerdict max_principle_check(const Trajectory& traj) {
  MaxPrincipleVerdict verdict;
  if (traj.snapshots.empty()) return verdict;
  const std::size_t n = traj.grid.n_cells();
  double bmin = *std::min_element(traj.snapshots.front().values.begin(), traj.snapshots.front().values.end());
  for (const auto& s : traj.snapshots) bmin = std::min({bmin, s.values.front(), s.values.back()});

  double imin = std::numeric_limits<double>::infinity();
  std::size_t wi = 0, wk = 0;
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const auto& v = traj.snapshots[k].values;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (v[i] < imin) {
        imin = v[i];
        wi = i;
        wk = k;
      }
    }
  }
  verdict.boundary_min = bmin;
  verdict.interior_min = std::isfinite(imin) ? imin : bmin;
  verdict.pass = verdict.interior_min >= bmin - 1e-10;
  if (!verdict.pass) {
    verdict.witness_x = traj.grid.center(wi);
    verdict.witness_t = traj.snapshots[wk].t;
  }
  return verdict;
}

}  // namespace degdiff
