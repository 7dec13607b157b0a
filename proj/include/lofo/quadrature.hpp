#pragma once

#include <cstddef>
#include <functional>

namespace lofo {

struct QuadratureOptions {
  double tol = 1e-8;         ///< absolute tolerance on the whole integral
  int max_depth = 40;        ///< bisection depth per initial panel
  std::size_t panels = 16;   ///< initial equal panels (guards against aliasing)
  /// Depth alone does not bound the work (2^depth leaves); past this many
  /// evaluations refinement stops and the result is marked unconverged.
  std::size_t max_evaluations = 20'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

/// Adaptive Simpson with interval bisection and Richardson correction.
/// Never throws; callers inspect `converged`.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options = {});

}  // namespace lofo
