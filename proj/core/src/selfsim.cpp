#include "degdiff/selfsim.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "degdiff/errors.hpp"

namespace degdiff {

namespace {

void require_profile_params(double gamma0, double m) {
  if (!(m > -1.0)) throw DomainError("self-similar profile requires m > -1");
  if (!(gamma0 >= 0.0)) throw DomainError("self-similar profile requires gamma0 >= 0");
  if (!(gamma0 + m > 0.0)) throw DomainError("self-similar profile requires gamma0 + m > 0");
}

// Bracketed base of the profile: f = base^{(m+1)/(gamma0+m)}.
double profile_base(double xi_abs, double gamma0, double m) {
  const double denom = gamma0 + 2.0 * m + 2.0;
  return (gamma0 + m) / (m + 2.0) * std::pow(denom, -1.0 / (m + 1.0)) *
         (1.0 - std::pow(xi_abs, (m + 2.0) / (m + 1.0)));
}

}  // namespace

double exponent_nu(double gamma0, double m) {
  const double denom = gamma0 + 2.0 * m + 2.0;
  if (!(denom > 0.0)) throw DomainError("exponent_nu: gamma0 + 2m + 2 must be positive");
  return 1.0 / denom;
}

double profile_f(double xi, double gamma0, double m) {
  require_profile_params(gamma0, m);
  const double a = std::abs(xi);
  if (a >= 1.0) return 0.0;
  const double base = profile_base(a, gamma0, m);
  if (base <= 0.0) return 0.0;
  return std::pow(base, (m + 1.0) / (gamma0 + m));
}

ProfileSlope profile_fprime(double xi, double gamma0, double m) {
  require_profile_params(gamma0, m);
  const double a = std::abs(xi);
  const double sign = xi < 0.0 ? -1.0 : 1.0;
  if (a == 0.0) return {0.0, SlopeKind::finite};
  if (a > 1.0) return {0.0, SlopeKind::vanishing};

  const double denom = gamma0 + 2.0 * m + 2.0;
  const double lead = std::pow(denom, -1.0 / (m + 1.0));
  const double front_exponent = (1.0 - gamma0) / (gamma0 + m);

  if (a == 1.0) {
    if (front_exponent > 0.0) return {0.0, SlopeKind::vanishing};
    if (front_exponent == 0.0) return {-sign * lead, SlopeKind::finite};
    return {-sign * std::numeric_limits<double>::infinity(), SlopeKind::singular};
  }

  const double base = profile_base(a, gamma0, m);
  const double value = -lead * std::pow(a, 1.0 / (m + 1.0)) * std::pow(base, front_exponent);
  return {sign * value, SlopeKind::finite};
}

double front_constant_gamma(double gamma0, double m) {
  require_profile_params(gamma0, m);
  const double denom = gamma0 + 2.0 * m + 2.0;
  const double a = (m + 1.0) / (m + 2.0);
  const double b = (m + 1.0) / (m + gamma0);
  if (!(a > 0.0) || !(b + 1.0 > 0.0) || !(a + b + 1.0 > 0.0)) {
    throw DomainError("front_constant_gamma: non-positive Gamma argument");
  }
  // Gamma ratio via lgamma; all arguments are positive here.
  const double gamma_ratio = std::exp(std::lgamma(a + b + 1.0) - std::lgamma(a) - std::lgamma(b + 1.0));
  const double bracket = 0.5 * (m + 2.0) / (m + 1.0) * gamma_ratio;
  return std::pow((m + 2.0) / (gamma0 + m), (m + 1.0) / denom) * std::pow(denom, 1.0 / denom) *
         std::pow(bracket, (gamma0 + m) / denom);
}

double front_constant_quadrature(double gamma0, double m) {
  require_profile_params(gamma0, m);
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  const double half = integrator.integrate([&](double xi) { return profile_f(xi, gamma0, m); }, 0.0,
                                           1.0, 1e-13, &error, &l1, &levels);
  if (!std::isfinite(half) || !(half > 0.0) || error > 1e-10 * l1) {
    throw NumericalError("front_constant_quadrature: no convergence (integral=" + std::to_string(half) +
                         ", error estimate=" + std::to_string(error) +
                         ", levels=" + std::to_string(levels) + ")");
  }
  const double integral = 2.0 * half;
  return std::pow(integral, -(gamma0 + m) / (gamma0 + 2.0 * m + 2.0));
}

double first_integral_residual(double xi, double gamma0, double m) {
  const double nu = exponent_nu(gamma0, m);
  const double f = profile_f(xi, gamma0, m);
  const double fp = profile_fprime(xi, gamma0, m).value;
  return nu * xi * f + std::pow(f, gamma0) * std::pow(std::abs(fp), m) * fp;
}

SelfSimilarSolution SelfSimilarSolution::make(double gamma0, double m) {
  require_profile_params(gamma0, m);
  SelfSimilarSolution s;
  s.params_.gamma0 = gamma0;
  s.params_.m = m;
  s.params_.q0 = 1.0;
  s.nu_ = exponent_nu(gamma0, m);
  s.eta_f_ = front_constant_gamma(gamma0, m);
  s.amplitude_ = std::pow(s.eta_f_, (m + 2.0) / (gamma0 + m));
  return s;
}

double SelfSimilarSolution::evaluate(double x, double t) const {
  if (!(t > 0.0)) throw DomainError("self-similar solution is singular at t <= 0");
  const double scale = std::pow(t, -nu_);
  const double xi = x * scale / eta_f_;
  if (std::abs(xi) >= 1.0) return 0.0;
  return amplitude_ * scale * profile_f(xi, params_.gamma0, params_.m);
}

double SelfSimilarSolution::front_position(double t) const {
  if (!(t > 0.0)) throw DomainError("front_position requires t > 0");
  return eta_f_ * std::pow(t, nu_);
}

}  // namespace degdiff
