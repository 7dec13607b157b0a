#include "lofo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lofo {
namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  std::size_t max_evaluations;
  std::size_t evaluations = 0;
  bool converged = true;
  double error = 0.0;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  // [a, b] with known values fa, fm, fb and whole-interval Simpson estimate.
  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || h <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(m)) {
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth || evaluations >= max_evaluations) {
      converged = false;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) return result;
  Simpson s{f, options.max_depth, options.max_evaluations};
  const std::size_t panels = std::max<std::size_t>(1, options.panels);
  const double width = (b - a) / static_cast<double>(panels);
  const double panel_tol = options.tol / static_cast<double>(panels);
  double total = 0.0;
  double fa = s.eval(a);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = (k + 1 == panels) ? b : a + width * static_cast<double>(k + 1);
    const double mid = 0.5 * (lo + hi);
    const double fm = s.eval(mid);
    const double fb = s.eval(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += s.refine(lo, hi, fa, fm, fb, whole, panel_tol, 0);
    fa = fb;
  }
  result.value = total;
  result.error_estimate = s.error;
  result.converged = s.converged;
  result.evaluations = s.evaluations;
  return result;
}

}  // namespace lofo
