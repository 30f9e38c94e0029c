#pragma once

#include <stdexcept>
#include <string>

namespace degdiff {

/// Exit codes shared by the CLI and the summary JSON `error.code` field.
enum class ExitCode : int {
  success = 0,
  config_error = 2,
  numerical_failure = 3,
  acceptance_failure = 4,
};

/// A precondition on model parameters or inputs does not hold.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure (Picard iteration, quadrature, time stepping) failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid experiment configuration. Carries line/key context
/// in the message when it is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace degdiff
