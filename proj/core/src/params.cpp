#include "degdiff/params.hpp"

#include <cmath>
#include <string>

#include "degdiff/errors.hpp"

namespace degdiff {

namespace {
constexpr const char* kMappingHypothesis = "mapping theorem hypothesis violated";
}

void NonDivParams::validate() const {
  if (!(sigma2 > 0.0)) throw DomainError("sigma2 must be positive");
  if (!(tau0 > 0.0)) throw DomainError("tau0 must be positive");
  if (!std::isfinite(gamma) || !std::isfinite(beta)) throw DomainError("non-finite exponent");
}

void NonDivParams::validate_for_mapping() const {
  validate();
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError(std::string(kMappingHypothesis) + ": need 0 <= gamma < 1, got gamma = " +
                      std::to_string(gamma));
  }
  if (drift != 0.0) throw DomainError("drift must be zero for the divergence mapping");
}

void DivParams::validate() const {
  if (!(gamma0 >= 0.0)) throw DomainError("gamma0 must be non-negative");
  if (!(m > -1.0)) throw DomainError("gradient exponent m must exceed -1");
  if (!(q0 > 0.0)) throw DomainError("q0 must be positive");
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative");
}

double alpha_from_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError(std::string(kMappingHypothesis) + ": need 0 <= gamma < 1");
  }
  return gamma / (1.0 - gamma);
}

double gamma_from_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be finite and >= 0");
  return alpha / (1.0 + alpha);
}

DivParams to_divergence(const NonDivParams& p) {
  p.validate_for_mapping();
  DivParams d;
  d.alpha = alpha_from_gamma(p.gamma);
  d.gamma0 = d.alpha * (p.beta + 1.0);
  d.q0 = 0.5 * p.sigma2 * std::pow(d.alpha + 1.0, p.beta) / (p.beta + 1.0);
  d.m = p.beta;
  return d;
}

NonDivParams from_divergence(const DivParams& d) {
  d.validate();
  NonDivParams p;
  p.beta = d.m;
  const double alpha = d.gamma0 / (d.m + 1.0);
  p.gamma = gamma_from_alpha(alpha);
  p.sigma2 = 2.0 * d.q0 * (d.m + 1.0) / std::pow(alpha + 1.0, d.m);
  return p;
}

std::vector<double> map_v_to_u(std::span<const double> v, double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative");
  std::vector<double> u(v.size());
  const double power = alpha + 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      throw DomainError("map_v_to_u: negative value " + std::to_string(v[i]) + " at index " +
                        std::to_string(i) + " (solver undershoot)");
    }
    u[i] = v[i] == 0.0 ? 0.0 : std::pow(v[i], power);
  }
  return u;
}

double rescale_time(double t, double q0) {
  if (!(q0 > 0.0)) throw DomainError("rescale_time: q0 must be positive");
  return q0 * t;
}

}  // namespace degdiff
