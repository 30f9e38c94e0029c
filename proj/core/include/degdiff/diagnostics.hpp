#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "degdiff/grid.hpp"
#include "degdiff/params.hpp"
#include "degdiff/selfsim.hpp"

namespace degdiff {

/// Discrete mass sum(v_i) dx.
double mass(const Snapshot& snapshot, const Grid& grid);

/// Largest |M(t) - M(0)| / M(0) over all snapshots (0 for a massless trajectory).
double max_relative_mass_drift(const Trajectory& traj);

// ---------------------------------------------------------------------------
// Front tracking

struct FrontTrace {
  std::vector<double> times;
  std::vector<double> x_front;
  double threshold = 0.0;
  bool relative = true;
};

/// Support radius per recorded time: the outermost |x| at which v crosses
/// the detection level, refined by linear interpolation toward the
/// neighbouring cell. With `relative` the level is threshold * max v(., t);
/// otherwise threshold is absolute and must not exceed the global maximum.
/// The trace is made monotone with a running maximum.
FrontTrace detect_front(const Trajectory& traj, double threshold = 1e-10, bool relative = true);

struct FrontFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t points = 0;
};

/// Least-squares line through (log t, log x_front) for t in [t_lo, t_hi].
/// Needs at least five points with positive x_front.
FrontFit fit_front_exponent(const FrontTrace& trace, double t_lo, double t_hi);

// ---------------------------------------------------------------------------
// Intermediate asymptotics

struct ShiftedDistance {
  double distance = 0.0;  // sum |v_i(t) - s(x_i, t + shift)| dx
  double shift = 0.0;     // minimising time shift in [0, max_shift]
};

/// L1 distance between the snapshot at time t and the self-similar solution,
/// minimised over one time shift (coarse scan plus golden-section refinement).
ShiftedDistance selfsim_distance(const Trajectory& traj, const SelfSimilarSolution& s, double t,
                                 double max_shift = 2.0);

// ---------------------------------------------------------------------------
// Mapped non-divergence residual

struct MappingResidual {
  std::vector<double> times;     // solver (rescaled) times of the evaluated snapshots
  std::vector<double> residual;  // max-norm of L u over the masked cells
  std::vector<std::size_t> cells_used;
};

/// Maps v to u = v^{alpha+1} and evaluates
///   L u = u_t - (sigma2/2) u^gamma |u_x|^beta u_xx
/// with second-order central differences in x and in t (non-uniform three
/// point stencil) on every snapshot that has two neighbours. Trajectory
/// times are the coefficient-free times t' = q0 t, so u_t = q0 du/dt'.
/// Only interior cells with u > 10 * threshold * max u contribute.
MappingResidual mapping_residual(const Trajectory& traj, const NonDivParams& nondiv, double threshold = 1e-10);

// ---------------------------------------------------------------------------
// Maximum principle

struct MaxPrincipleVerdict {
  bool pass = true;
  double boundary_min = 0.0;  // min over t = 0 and the two end cells
  double interior_min = 0.0;  // min over interior cells at t > 0
  std::optional<double> witness_x;
  std::optional<double> witness_t;
};

/// Checks min over interior >= min over the parabolic boundary - 1e-10.
MaxPrincipleVerdict max_principle_check(const Trajectory& traj);

// ---------------------------------------------------------------------------
// Localization energies

struct DeGiorgiConfig {
  double theta = 1.0;
  double r = 2.2;
  double support_radius = 1.0;  // R0, bound on the initial support
  int n_max = 6;
  NonDivParams nondiv;

  void validate() const;
};

struct DeGiorgiReport {
  double q = 0.0;
  double zeta = 0.0;
  double epsilon0 = 0.0;
  double T = 0.0;
  std::vector<double> radii;  // r_0 .. r_{n_max+1}
  std::vector<double> I;      // I_0 .. I_{n_max}
};

/// Exponent q = (theta+1)(beta+2)/(theta+gamma+beta+1).
double degiorgi_q(double theta, double gamma, double beta);
/// zeta = (gamma+beta)/(gamma+beta + d (beta+2)(theta+1)).
double degiorgi_zeta(double theta, double gamma, double beta, int dimension = 1);
/// epsilon0 = (1 - zeta)((beta+2)/q - 1).
double degiorgi_epsilon0(double theta, double gamma, double beta, int dimension = 1);

/// Energies I_n(T) on the exterior regions |x| > r_{n+1}, with
/// w = u^{(theta+gamma+beta+1)/(beta+2)} and u = v^{alpha+1}:
///   I_n = sup_tau int w^q dx + int_0^T int |w_x|^{beta+2} dx dtau.
/// The sup runs over recorded snapshots in (0, T]; the time integral is a
/// trapezoid over recorded snapshots in [0, T].
DeGiorgiReport degiorgi_energies(const Trajectory& traj, const DeGiorgiConfig& cfg, double T);

}  // namespace degdiff
