#pragma once

#include <span>
#include <vector>

namespace degdiff {

/// Coefficients of the non-divergence equation
///   u_t + (drift/tau0) u^gamma |u_x|^beta u_x = (sigma2 / (2 tau0)) u^gamma |u_x|^beta u_xx.
/// Exponents are plain reals; they need not be integers.
struct NonDivParams {
  double gamma = 0.0;
  double beta = 0.0;
  double sigma2 = 2.0;
  double tau0 = 1.0;
  double drift = 0.0;  // retained for completeness, every numerical path requires 0

  /// Throws DomainError unless sigma2 > 0 and tau0 > 0.
  void validate() const;
  /// validate() plus 0 <= gamma < 1 and drift == 0.
  void validate_for_mapping() const;
};

/// Coefficients of the divergence-form equation
///   v_t = q0 (v^gamma0 |v_x|^m v_x)_x.
struct DivParams {
  double gamma0 = 0.0;
  double m = 0.0;
  double q0 = 1.0;
  double alpha = 0.0;

  /// Throws DomainError unless gamma0 >= 0, m > -1, q0 > 0 and alpha >= 0.
  void validate() const;
};

/// alpha = gamma / (1 - gamma). Requires 0 <= gamma < 1.
double alpha_from_gamma(double gamma);

/// gamma = alpha / (1 + alpha). Requires alpha >= 0.
double gamma_from_alpha(double alpha);

/// Maps non-divergence coefficients to the divergence form satisfied by
/// v = u^{1/(alpha+1)}: gamma0 = alpha (beta+1), m = beta and
/// q0 = (sigma2/2)(alpha+1)^beta / (beta+1).
DivParams to_divergence(const NonDivParams& p);

/// Inverse of to_divergence (tau0 = 1, drift = 0).
NonDivParams from_divergence(const DivParams& d);

/// u = v^{alpha+1} pointwise. Negative entries are rejected.
std::vector<double> map_v_to_u(std::span<const double> v, double alpha);

/// Time in which the divergence equation has unit coefficient: t' = q0 t.
double rescale_time(double t, double q0);

}  // namespace degdiff
