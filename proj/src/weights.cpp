#include "lofo/weights.hpp"

#include <algorithm>
#include <cmath>

#include "lofo/errors.hpp"

namespace lofo {

WeightVector::WeightVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw PreconditionError("weight vector is empty");
  long double sq = 0.0L;
  for (double x : coords_) {
    if (!std::isfinite(x)) throw PreconditionError("weight vector has a non-finite coordinate");
    sq += static_cast<long double>(x) * x;
    norm_inf_ = std::max(norm_inf_, std::abs(x));
  }
  if (norm_inf_ == 0.0) throw PreconditionError("weight vector must be nonzero");
  norm_ = static_cast<double>(std::sqrt(sq));
}

WeightVector WeightVector::sparse(std::size_t s, std::size_t n, double tail) {
  if (s == 0 || s > n) throw PreconditionError("sparse vector needs 1 <= s <= n");
  std::vector<double> c(n, tail);
  std::fill_n(c.begin(), s, 1.0 / std::sqrt(static_cast<double>(s)));
  return WeightVector(std::move(c));
}

std::size_t WeightVector::nonzero_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(coords_.begin(), coords_.end(), [](double x) { return x != 0.0; }));
}

WeightVector WeightVector::scaled(double c) const {
  if (!(c > 0.0) && !(c < 0.0)) throw PreconditionError("scale factor must be nonzero");
  std::vector<double> out(coords_.begin(), coords_.end());
  for (double& x : out) x *= c;
  return WeightVector(std::move(out));
}

}  // namespace lofo
