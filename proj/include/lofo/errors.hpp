#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lofo {

/// A mathematical precondition of an operation does not hold
/// (e.g. L^2 <= 1/P, negative window length, non-symmetric law).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact support enumeration would exceed the configured budget.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::size_t attained, std::size_t budget)
      : std::runtime_error("support size " + std::to_string(attained) +
                           " exceeds budget " + std::to_string(budget)),
        attained_(attained),
        budget_(budget) {}

  std::size_t attained() const noexcept { return attained_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t attained_;
  std::size_t budget_;
};

/// Adaptive quadrature ran out of refinement depth.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what + " (achieved estimate " + std::to_string(estimate) + ")"),
        estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lofo
