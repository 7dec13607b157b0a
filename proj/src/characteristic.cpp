#include "lofo/characteristic.hpp"

#include <cmath>

namespace lofo {

std::complex<double> cf_eval(const FiniteDist& law, double t) {
  const auto x = law.atoms();
  const auto m = law.masses();
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double phase = t * x[i];
    re += m[i] * std::cos(phase);
    im += m[i] * std::sin(phase);
  }
  return {re, im};
}

std::complex<double> cf_eval(const AnalyticDist& law, double t) { return law.cf(t); }

}  // namespace lofo
