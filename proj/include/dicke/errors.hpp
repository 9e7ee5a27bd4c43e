#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "dicke/model.hpp"

namespace dicke {

// Thrown when an operation is evaluated outside its analytic domain,
// e.g. mu >= kMuMax where C^{-1} blows up.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Closed forms exist only for U = 0.
class UnsupportedU : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Coexistence widths are not defined at t = +-1 (or when t itself is undefined).
class UndefinedAtT : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested phase cannot be hosted by the given couplings.
class PhaseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Branch has no superradiant solution (zeta_+^2 < omega*Omega).
class EmptyBranch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exact-diagonalization basis exceeds the desk-scale guard.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Bad sweep axis specification.
class AxisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative solver ran out of iterations; carries the best point seen so far
// when the failing solver works on mean-field states.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
  ConvergenceError(const std::string& msg, const MeanFieldState& best, double residual)
      : std::runtime_error(msg), best_(best), residual_(residual) {}

  const std::optional<MeanFieldState>& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  std::optional<MeanFieldState> best_;
  double residual_ = 0.0;
};

}  // namespace dicke
