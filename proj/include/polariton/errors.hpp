#pragma once

#include <stdexcept>
#include <string>

namespace polariton {

/// Invalid or inconsistent input (dimensions, grids, missing fields).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters outside the physical domain of a model, e.g. past the
/// normal-phase stability threshold.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to meet its contract.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_residual)
      : std::runtime_error(what), residual_(achieved_residual) {}
  explicit NumericalError(const std::string& what) : NumericalError(what, 0.0) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace polariton
