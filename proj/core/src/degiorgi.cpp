#include <algorithm>
#include <cmath>
#include <sstream>

#include "degdiff/diagnostics.hpp"
#include "degdiff/errors.hpp"

namespace degdiff {

void DeGiorgiConfig::validate() const {
  if (!(theta >= 1.0)) throw DomainError("De Giorgi config: theta must be >= 1");
  if (!(support_radius > 0.0)) throw DomainError("De Giorgi config: support radius R0 must be positive");
  if (!(r > 2.0 * support_radius)) throw DomainError("De Giorgi config: need r > 2 R0");
  if (n_max < 0) throw DomainError("De Giorgi config: n_max must be >= 0");
  nondiv.validate_for_mapping();
}

double degiorgi_q(double theta, double gamma, double beta) {
  return (theta + 1.0) * (beta + 2.0) / (theta + gamma + beta + 1.0);
}

double degiorgi_zeta(double theta, double gamma, double beta, int dimension) {
  return (gamma + beta) / (gamma + beta + dimension * (beta + 2.0) * (theta + 1.0));
}

double degiorgi_epsilon0(double theta, double gamma, double beta, int dimension) {
  const double zeta = degiorgi_zeta(theta, gamma, beta, dimension);
  return (1.0 - zeta) * ((beta + 2.0) / degiorgi_q(theta, gamma, beta) - 1.0);
}

DeGiorgiReport degiorgi_energies(const Trajectory& traj, const DeGiorgiConfig& cfg, double T) {
  cfg.validate();
  const NonDivParams& nd = cfg.nondiv;
  const double alpha = alpha_from_gamma(nd.gamma);
  if (std::abs(traj.params.gamma0 - alpha * (nd.beta + 1.0)) > 1e-12 * std::max(1.0, traj.params.gamma0) ||
      std::abs(traj.params.m - nd.beta) > 1e-12) {
    throw DomainError("degiorgi_energies: (gamma, beta) inconsistent with the trajectory's (gamma0, m)");
  }
  if (traj.snapshots.empty() || !(T > 0.0) || T > traj.snapshots.back().t) {
    throw DomainError("degiorgi_energies: trajectory must cover [0, T]");
  }

  DeGiorgiReport rep;
  rep.T = T;
  rep.q = degiorgi_q(cfg.theta, nd.gamma, nd.beta);
  rep.zeta = degiorgi_zeta(cfg.theta, nd.gamma, nd.beta, 1);
  rep.epsilon0 = degiorgi_epsilon0(cfg.theta, nd.gamma, nd.beta, 1);

  for (int n = 0; n <= cfg.n_max + 1; ++n) rep.radii.push_back(2.0 * cfg.r * (1.0 - std::ldexp(1.0, -(n + 1))));
  if (rep.radii.back() >= traj.grid.x_max()) {
    std::ostringstream msg;
    msg << "degiorgi_energies: radius r_" << cfg.n_max + 1 << " = " << rep.radii.back()
        << " leaves the domain (x_max = " << traj.grid.x_max() << ")";
    throw DomainError(msg.str());
  }

  const Grid& grid = traj.grid;
  const std::size_t n = grid.n_cells();
  const double dx = grid.dx();
  const double w_power = (cfg.theta + nd.gamma + nd.beta + 1.0) / (nd.beta + 2.0);
  const double grad_power = nd.beta + 2.0;
  const auto levels = static_cast<std::size_t>(cfg.n_max + 1);

  std::vector<double> sup_term(levels, 0.0);
  std::vector<double> time_integral(levels, 0.0);
  std::vector<double> prev_grad(levels, 0.0);
  double prev_t = 0.0;
  bool first = true;

  for (const auto& snap : traj.snapshots) {
    if (snap.t > T) break;
    const std::vector<double> u = map_v_to_u(snap.values, alpha);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = u[i] == 0.0 ? 0.0 : std::pow(u[i], w_power);

    std::vector<double> mass_q(levels, 0.0), grad(levels, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double ax = std::abs(grid.center(i));
      if (!(ax > rep.radii[1])) continue;
      double wx;
      if (i == 0) wx = (w[1] - w[0]) / dx;
      else if (i + 1 == n) wx = (w[n - 1] - w[n - 2]) / dx;
      else wx = (w[i + 1] - w[i - 1]) / (2.0 * dx);
      const double wq = w[i] == 0.0 ? 0.0 : std::pow(w[i], rep.q);
      const double g = wx == 0.0 ? 0.0 : std::pow(std::abs(wx), grad_power);
      for (std::size_t lvl = 0; lvl < levels; ++lvl) {
        if (ax > rep.radii[lvl + 1]) {
          mass_q[lvl] += wq * dx;
          grad[lvl] += g * dx;
        }
      }
    }
    for (std::size_t lvl = 0; lvl < levels; ++lvl) {
      if (snap.t > 0.0) sup_term[lvl] = std::max(sup_term[lvl], mass_q[lvl]);
      if (!first) time_integral[lvl] += 0.5 * (snap.t - prev_t) * (grad[lvl] + prev_grad[lvl]);
    }
    prev_grad = grad;
    prev_t = snap.t;
    first = false;
  }

  rep.I.resize(levels);
  for (std::size_t lvl = 0; lvl < levels; ++lvl) rep.I[lvl] = sup_term[lvl] + time_integral[lvl];
  return rep;
}

}  // namespace degdiff
