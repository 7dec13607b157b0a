#pragma once

// The spread functional M(tau) = E min(X~^2 / tau^2, 1) of a symmetrized law,
// its tau -> 0 limit P = P(X~ != 0), and the annulus decomposition of a
// symmetric finite law used by the characteristic-function estimates.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "lofo/analytic_dist.hpp"
#include "lofo/finite_dist.hpp"

namespace lofo {

enum class Method { exact, closed_form, quadrature, monte_carlo };

const char* to_string(Method m) noexcept;

struct SpreadOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 20130101;
  double tol = 1e-10;  ///< quadrature tolerance for the Gaussian path
};

struct SpreadValue {
  double value = 0.0;
  double std_error = 0.0;
  Method method = Method::exact;
  std::size_t samples = 0;
};

/// Exact E min(X~^2/tau^2, 1). Rejects a non-symmetric law.
double m_functional(const FiniteDist& symmetrized, double tau);

/// Gaussian: adaptive quadrature against the density. Stable / user laws:
/// Monte-Carlo mean with its standard error.
SpreadValue m_functional(const AnalyticDist& symmetrized, double tau, const SpreadOptions& options = {});

/// P(X~ != 0). Equals the tau -> 0 limit of m_functional.
double atom_survival(const FiniteDist& symmetrized);
double atom_survival(const AnalyticDist& symmetrized);

/// M(tau) for a finite symmetric law, or for an i.i.d. sample of X~, in
/// piecewise form: between consecutive |x| breakpoints M(tau) = A + B/tau^2.
/// Evaluation is O(log n) and the level set M(tau) = target is solved in
/// closed form on the piece that contains it.
class SpreadProfile {
 public:
  static SpreadProfile from_law(const FiniteDist& symmetrized);
  /// Empirical law of the draws (equal masses). Keeps fourth moments for the
  /// standard error of M.
  static SpreadProfile from_samples(std::vector<double> draws);
  /// Draws `samples` values of X~ from `symmetrized`.
  static SpreadProfile sampled(const AnalyticDist& symmetrized, std::size_t samples, std::uint64_t seed);

  double m(double tau) const;
  double std_error(double tau) const;
  double survival() const noexcept { return survival_; }
  std::size_t samples() const noexcept { return samples_; }
  bool is_sampled() const noexcept { return samples_ > 0; }

  struct Root {
    double tau;
    std::size_t iterations;
  };
  /// Smallest tau with M(tau) = target; requires 0 < target < survival().
  Root solve(double target) const;

 private:
  SpreadProfile() = default;
  void build(std::vector<double> abs_values, std::vector<double> masses);
  std::size_t count_le(double tau) const;

  std::vector<double> breakpoints_;  // sorted nonzero |x|
  std::vector<double> tail_;         // tail_[k] = mass of breakpoints k..end
  std::vector<double> second_;       // second_[k] = sum_{i<k} mass_i x_i^2
  std::vector<double> fourth_;       // fourth_[k] = sum_{i<k} mass_i x_i^4
  double survival_ = 0.0;
  std::size_t samples_ = 0;
};

/// The M(.) backend used by root solving and bound shapes: an exact or
/// sampled SpreadProfile, or Gaussian quadrature.
class SpreadModel {
 public:
  static SpreadModel of(const FiniteDist& symmetrized);
  /// Gaussian -> quadrature; stable and user laws -> SpreadProfile of
  /// options.samples draws (common random numbers for every tau).
  static SpreadModel of(const AnalyticDist& symmetrized, const SpreadOptions& options = {});

  double m(double tau) const;
  double std_error(double tau) const;
  double survival() const noexcept { return survival_; }
  Method method() const noexcept { return method_; }
  /// Present for exact and sampled backends.
  const SpreadProfile* profile() const noexcept { return profile_ ? &*profile_ : nullptr; }

 private:
  SpreadModel() = default;
  std::optional<SpreadProfile> profile_;
  double gaussian_sigma_ = 0.0;
  double quadrature_tol_ = 1e-10;
  double survival_ = 0.0;
  Method method_ = Method::exact;
};

/// One annulus A_j of the mixture decomposition: A_0 = {|x| > 1},
/// A_j = {r^-j < |x| <= r^-j+1} for j >= 1.
struct Annulus {
  int j = 0;
  double lower = 0.0;  ///< exclusive
  double upper = 0.0;  ///< inclusive (infinity for j = 0)
  double p = 0.0;      ///< G{A_j}
  double beta = 0.0;   ///< r^-2j p_j
  double mu = 0.0;     ///< beta_j / beta
};

struct MixtureDecomposition {
  double r = 0.0;
  double q = 0.0;  ///< G{0}
  std::vector<Annulus> annuli;  ///< j = 0..J, empty annuli included
  double beta = 0.0;
  double m1 = 0.0;  ///< M(1) of the decomposed law
  /// beta >= M(1)/r^2 (and hence >= M(1)/2), checked with 1e-12 relative slack.
  bool certified = false;
};

/// Decomposes a symmetric finite law into annuli. Annuli stop at the smallest
/// nonzero |atom|. r must lie in (1, sqrt 2].
MixtureDecomposition mixture_decompose(const FiniteDist& symmetrized, double r = std::numbers::sqrt2);

}  // namespace lofo
