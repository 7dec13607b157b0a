#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "lofo/analytic_dist.hpp"
#include "lofo/finite_dist.hpp"
#include "lofo/spread.hpp"
#include "lofo/weights.hpp"

namespace lofo {

/// Value of Q(F, lambda) = sup_x F{[x, x + lambda]} and how it was obtained.
/// For Monte-Carlo, [value - error_radius, value + error_radius] holds the true
/// value with probability at least 99% (Dvoretzky-Kiefer-Wolfowitz).
struct QEstimate {
  double value = 0.0;
  Method method = Method::exact;
  double error_radius = 0.0;
  double lambda = 0.0;
  double window_left = 0.0;  ///< left edge of a maximizing window
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultSupportBudget = std::size_t{1} << 22;
inline constexpr double kMonteCarloConfidence = 0.99;

struct Window {
  double left = 0.0;
  double mass = 0.0;
};

/// Heaviest closed window [x, x + lambda] over sorted points with masses.
/// Left edges are tried at every point; ties go to the smallest x. Points
/// within 1e-11 (relative) of the right edge count as inside.
Window best_window(std::span<const double> sorted_points, std::span<const double> masses, double lambda);

/// Exact Q(F, lambda) for a finite law.
QEstimate q_exact(const FiniteDist& law, double lambda);

/// Q of a centered Gaussian with standard deviation sigma_total:
/// 2 Phi(lambda / (2 sigma_total)) - 1.
QEstimate q_closed_form_gaussian(double sigma_total, double lambda);

/// Exact law of sum_k a_k X_k. Weights are folded in descending |a_k|; a
/// two-point law with equal nonzero weights takes the binomial route. Throws
/// CapacityError when the coalesced support exceeds `budget`.
FiniteDist weighted_sum_dist(const FiniteDist& law, const WeightVector& a,
                             std::size_t budget = kDefaultSupportBudget);

/// Empirical Q of n_samples draws of S_a (n_samples >= 10^4).
QEstimate q_monte_carlo(const FiniteDist& law, const WeightVector& a, double lambda, std::size_t n_samples,
                        std::uint64_t seed);
QEstimate q_monte_carlo(const AnalyticDist& law, const WeightVector& a, double lambda, std::size_t n_samples,
                        std::uint64_t seed);

/// DKW half-width for the window mass at the given confidence.
double dkw_window_radius(std::size_t n_samples, double confidence = kMonteCarloConfidence);

/// lambda * integral_0^{1/lambda} |cf of S_a| dt, adaptive Simpson to
/// absolute tolerance `tol`. Throws QuadratureError on non-convergence.
double esseen_integral(const FiniteDist& law, const WeightVector& a, double lambda, double tol = 1e-8);
double esseen_integral(const AnalyticDist& law, const WeightVector& a, double lambda, double tol = 1e-8);

struct RegularityReport {
  double lambda = 0.0;
  double mu = 0.0;
  double q_lambda = 0.0;
  double q_mu = 0.0;
  double bound = 0.0;  ///< (1 + floor(mu/lambda)) Q(F, lambda)
  bool holds = false;
};

/// Q(F, mu) <= (1 + floor(mu/lambda)) Q(F, lambda), both sides exact.
RegularityReport q_regularity_check(const FiniteDist& law, double lambda, double mu);

}  // namespace lofo
