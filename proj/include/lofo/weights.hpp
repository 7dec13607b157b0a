#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lofo {

/// Coefficient vector a of a weighted sum, with cached Euclidean and max norms.
class WeightVector {
 public:
  /// Throws PreconditionError when a is empty, non-finite or identically zero.
  explicit WeightVector(std::vector<double> coords);

  /// s coordinates equal to s^{-1/2} followed by n - s coordinates equal to `tail`.
  static WeightVector sparse(std::size_t s, std::size_t n, double tail = 0.0);

  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t k) const { return coords_[k]; }
  std::size_t size() const noexcept { return coords_.size(); }
  std::size_t nonzero_count() const noexcept;

  double norm() const noexcept { return norm_; }
  double norm_inf() const noexcept { return norm_inf_; }

  WeightVector scaled(double c) const;
  WeightVector normalized() const { return scaled(1.0 / norm_); }

 private:
  std::vector<double> coords_;
  double norm_ = 0.0;
  double norm_inf_ = 0.0;
};

}  // namespace lofo
