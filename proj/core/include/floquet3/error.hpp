#pragma once

#include <stdexcept>
#include <string>

namespace floquet3 {

/// Malformed or inadmissible input (bad coefficient description, bad ranges).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver a result at the requested accuracy.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ODE integrator gave up or its result violated a structural identity.
class IntegrationError : public NumericalFailure {
 public:
  IntegrationError(const std::string& what, double det_residual = 0.0,
                   double j_residual = 0.0)
      : NumericalFailure(what),
        det_residual_(det_residual),
        j_residual_(j_residual) {}

  double det_residual() const noexcept { return det_residual_; }
  double j_residual() const noexcept { return j_residual_; }

 private:
  double det_residual_;
  double j_residual_;
};

}  // namespace floquet3
