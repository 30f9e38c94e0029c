#include "degdiff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "degdiff/errors.hpp"

namespace degdiff {

Grid::Grid(double x_max, std::size_t n_cells) : x_max_(x_max), dx_(0.0) {
  if (!(x_max > 0.0)) throw DomainError("grid half-width x_max must be positive");
  if (n_cells < 16) throw DomainError("grid needs at least 16 cells");
  dx_ = 2.0 * x_max / static_cast<double>(n_cells);
  centers_.resize(n_cells);
  // Offsets are half-integers symmetric about zero, so x_i == -x_{n-1-i} exactly.
  const double half_n = 0.5 * static_cast<double>(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    centers_[i] = (static_cast<double>(i) + 0.5 - half_n) * dx_;
  }
}

void Schedule::validate() const {
  if (!(t_end > 0.0)) throw DomainError("schedule: t_end must be positive");
  if (!(dt_initial > 0.0)) throw DomainError("schedule: dt_initial must be positive");
  if (!(dt_max >= dt_initial)) throw DomainError("schedule: need dt_initial <= dt_max");
  if (!(picard_tol > 0.0)) throw DomainError("schedule: picard_tol must be positive");
  if (picard_max_iters < 1) throw DomainError("schedule: picard_max_iters must be >= 1");
  double prev = 0.0;
  for (double t : snapshot_times) {
    if (!(t > prev)) throw DomainError("schedule: snapshot times must be strictly increasing in (0, t_end]");
    if (t > t_end) throw DomainError("schedule: snapshot time " + std::to_string(t) + " exceeds t_end");
    prev = t;
  }
}

std::vector<double> Schedule::log_spaced(double t_min, double t_end, int per_decade) {
  if (!(t_min > 0.0) || !(t_end > 0.0) || per_decade < 1) {
    throw DomainError("log_spaced: need t_min > 0, t_end > 0 and per_decade >= 1");
  }
  std::vector<double> times;
  if (t_end <= t_min) return {t_end};
  const auto k_lo = static_cast<long>(std::ceil(std::log10(t_min) * per_decade - 1e-9));
  for (long k = k_lo;; ++k) {
    const double t = std::pow(10.0, static_cast<double>(k) / per_decade);
    if (t >= t_end * (1.0 - 1e-12)) break;
    times.push_back(t);
  }
  times.push_back(t_end);
  return times;
}

std::size_t Trajectory::index_of(double t) const {
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    if (snapshots[i].t == t) return i;
  }
  throw DomainError("no snapshot recorded at t = " + std::to_string(t));
}

}  // namespace degdiff
