#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eepc {

/// Invalid model or solver parameters (bad dimensions, out-of-range values).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity is undefined at the requested point (e.g. zero success
/// probability where a fixed point is required).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was invoked under the wrong transport protocol.
class ProtocolMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Requested problem size exceeds what an exhaustive method will attempt.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A payoff evaluated to NaN/inf during the dynamics.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, std::vector<double> profile)
      : std::runtime_error(what), profile_(std::move(profile)) {}
  const std::vector<double>& profile() const noexcept { return profile_; }

 private:
  std::vector<double> profile_;
};

/// Best-response dynamics hit max_rounds before reaching tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, std::size_t rounds, double last_delta)
      : std::runtime_error(what), rounds_(rounds), last_delta_(last_delta) {}
  std::size_t rounds() const noexcept { return rounds_; }
  double last_delta() const noexcept { return last_delta_; }

 private:
  std::size_t rounds_;
  double last_delta_;
};

}  // namespace eepc
