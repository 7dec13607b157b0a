#pragma once

#include <complex>

#include "lofo/analytic_dist.hpp"
#include "lofo/finite_dist.hpp"
#include "lofo/weights.hpp"

namespace lofo {

/// E exp(itX).
std::complex<double> cf_eval(const FiniteDist& law, double t);
std::complex<double> cf_eval(const AnalyticDist& law, double t);

/// Characteristic function of sum_k a_k X_k for i.i.d. X_k ~ law.
template <class Law>
std::complex<double> weighted_cf(const Law& law, const WeightVector& a, double t) {
  std::complex<double> product(1.0, 0.0);
  for (double ak : a.coords()) {
    if (ak == 0.0) continue;
    product *= cf_eval(law, ak * t);
  }
  return product;
}

}  // namespace lofo
