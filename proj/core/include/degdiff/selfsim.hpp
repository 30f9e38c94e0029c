#pragma once

#include "degdiff/params.hpp"

namespace degdiff {

/// Spreading exponent nu = 1 / (gamma0 + 2m + 2) of the point-source solution.
double exponent_nu(double gamma0, double m);

/// Similarity profile f(xi) on [-1, 1], even in xi, f(+-1) = 0. Zero outside
/// the support. Requires gamma0 + m > 0 and m > -1.
double profile_f(double xi, double gamma0, double m);

/// Classification of f'(xi). Interior points are always `finite`; the
/// distinction matters only at the front xi = +-1.
enum class SlopeKind {
  finite,     // ordinary value (interior, xi = 0, or the gamma0 = 1 front)
  vanishing,  // f' -> 0 at the front
  singular,   // |f'| -> infinity at the front; value holds a signed infinity
};

struct ProfileSlope {
  double value = 0.0;
  SlopeKind kind = SlopeKind::finite;
};

/// f'(xi), odd in xi. At |xi| = 1 the behaviour is governed by the sign of
/// (1 - gamma0) / (gamma0 + m).
ProfileSlope profile_fprime(double xi, double gamma0, double m);

/// Front constant eta_f from the closed Gamma-function expression.
double front_constant_gamma(double gamma0, double m);

/// Front constant eta_f = [int_{-1}^{1} f]^{-(gamma0+m)/(gamma0+2m+2)} by
/// adaptive (tanh-sinh) quadrature of the closed-form profile. Independent
/// route to front_constant_gamma.
double front_constant_quadrature(double gamma0, double m);

/// nu xi f + f^gamma0 |f'|^m f', which vanishes identically for the exact profile.
double first_integral_residual(double xi, double gamma0, double m);

/// Unit-mass point-source solution v(x,t) = V t^-nu f(x t^-nu / eta_f) of
/// v_t = (v^gamma0 |v_x|^m v_x)_x (time already rescaled so q0 = 1).
class SelfSimilarSolution {
 public:
  /// Builds the solution for (gamma0, m); eta_f comes from the Gamma formula.
  static SelfSimilarSolution make(double gamma0, double m);
  static SelfSimilarSolution make(const DivParams& p) { return make(p.gamma0, p.m); }

  const DivParams& params() const { return params_; }
  double nu() const { return nu_; }
  double eta_f() const { return eta_f_; }
  double amplitude() const { return amplitude_; }
  double mass() const { return 1.0; }

  /// v(x, t); t must be positive.
  double evaluate(double x, double t) const;
  /// x_f(t) = eta_f t^nu; t must be positive.
  double front_position(double t) const;

 private:
  SelfSimilarSolution() = default;

  DivParams params_;
  double nu_ = 0.0;
  double eta_f_ = 0.0;
  double amplitude_ = 0.0;
};

}  // namespace degdiff
