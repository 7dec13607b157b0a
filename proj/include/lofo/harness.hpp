#pragma once

// Instance families, empirical calibration of the unspecified constants, the
// binomial lower-bound chain and the scaling studies.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lofo/bounds.hpp"
#include "lofo/finite_dist.hpp"
#include "lofo/weights.hpp"

namespace lofo {

/// One (law, weights) pair. `p` is the Bernoulli parameter when the law is
/// Bernoulli and 0 otherwise; s and eta describe sparse vectors.
struct Instance {
  std::string id;
  FiniteDist law;
  WeightVector a;
  double p = 0.0;
  std::size_t s = 0;
  double eta = 0.0;
};

struct InstanceFamily {
  std::string id;
  std::string description;
  std::vector<Instance> instances;
};

/// Sparse vectors s^{-1/2}(1,..,1,0,..,0) in R^n with Bernoulli(p) laws, one
/// instance per (s, p). When n > s a perturbed copy with tail coordinates eta
/// (default s^-3) follows each instance. n = 0 means n = s.
InstanceFamily gen_sparse_family(std::span<const std::size_t> s_list, std::size_t n, std::span<const double> p_list,
                                 std::optional<double> eta = std::nullopt);

/// Random Bernoulli instances with 3..10 positive weights, normalized to unit
/// length, p uniform on [0.15, 0.5]. Same seed, same family.
InstanceFamily gen_random_family(std::size_t count, std::uint64_t seed);

/// Named families used by the CLI and the acceptance suite:
///   sparse       s in {4, 8, ..., 256}, n = s, p in {0.05, ..., 0.5}
///   sparse_core  s in {4, 16, 64, 256}, n = s, same p grid
///   perturbed    s in {4, 8, 16}, n = s + 4, p in {0.2, 0.35, 0.5}
///   random       200 seeded random instances
InstanceFamily make_family(const std::string& id, std::uint64_t seed = 1);
std::vector<std::string> family_ids();

enum class CalibratedBound { optimal, bernoulli_min, kolmogorov_rogozin, esseen, no_arithmetic };

const char* to_string(CalibratedBound b) noexcept;
CalibratedBound parse_calibrated_bound(const std::string& name);

/// Frozen sup of Q/shape over the reference families. A report passes when
/// its ratio_sup does not exceed this.
double calibration_fixture(CalibratedBound b);

struct CalibrationRow {
  std::string instance;
  double eps = 0.0;
  double q = 0.0;
  double shape = 0.0;  ///< 0 when excluded
  double ratio = 0.0;  ///< 0 when excluded
  bool included = false;
  std::string branch;     ///< shape id actually evaluated
  std::string condition;  ///< preconditions as evaluated, or the exclusion reason
};

struct CalibrationReport {
  std::string bound;
  std::string family;
  double L = 0.0;
  std::vector<CalibrationRow> rows;
  std::size_t included = 0;
  std::size_t excluded = 0;
  double ratio_sup = 0.0;
  double ratio_inf = 0.0;
  double fixture = 0.0;
  bool pass = false;
};

/// Q(F_a, eps) exactly against the bound shape at eps_points windows
/// eps_i = 4 sqrt(p(1-p)) i / (eps_points - 1) per instance (sd of one summand
/// for non-Bernoulli laws). Instances or windows that fail a precondition are
/// kept as excluded rows and never scored.
CalibrationReport calibrate_upper(CalibratedBound bound, const InstanceFamily& family, double L,
                                  std::size_t eps_points = 40);

struct LowerBoundRow {
  std::size_t s = 0;
  double p = 0.0;
  double eps = 0.0;
  double q = 0.0;
  double min_form = 0.0;  ///< min{(eps + s^-1/2)/sqrt(p(1-p)), 1}
  double ratio = 0.0;
};

/// Exact checks of the steps behind the binomial lower bound, per (s, p).
/// Constants are the explicit ones the regularity inequality produces.
struct LowerBoundChain {
  std::size_t s = 0;
  double p = 0.0;
  double chebyshev_mass = 0.0;   ///< P{|S - ES| < 2 sqrt(p(1-p))}, must be >= 3/4
  bool chebyshev_ok = false;
  bool wide_window_ok = false;   ///< Q(4 sd) >= 3/4 and Q(4 sd) <= (1 + floor(4 sd/eps)) Q(eps)
  bool linear_ok = false;        ///< Q(eps) >= (3/32) eps / sd on (0, 4 sd]
  bool atom_ok = false;          ///< sp(1-p) > 1: Q(0) >= Q(s^-1/2)/2 >= (3/64)/sqrt(s p(1-p));
                                 ///< otherwise Q(0) >= 3/20
  bool all_ok() const noexcept { return chebyshev_ok && wide_window_ok && linear_ok && atom_ok; }
};

struct LowerBoundReport {
  std::vector<LowerBoundRow> rows;
  std::vector<LowerBoundChain> chain;
  double ratio_inf = 0.0;
  double c_low = 0.0;
  bool pass = false;
};

inline constexpr double kLowerBoundConstant = 0.19;

LowerBoundReport check_lower_binomial(std::span<const std::size_t> s_list, std::span<const double> p_list,
                                      std::size_t eps_points = 40);

struct ScalingRow {
  double alpha = 0.0;
  std::vector<double> L;
  std::vector<double> tau0;
  double slope = 0.0;
  double half_width = 0.0;  ///< 95% regression half-width (common random numbers: heuristic)
  double expected = 0.0;    ///< 2 / alpha
  bool inconclusive = false;  ///< half-width above 10% of the expected slope
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// tau0(L) for symmetric stable laws of unit scale, from one sampled M
/// profile per alpha, and the least-squares slope of log tau0 on log L.
ScalingReport study_tau0_scaling(std::span<const double> alpha_list, std::span<const double> L_grid,
                                 std::uint64_t seed, std::size_t samples = 1'000'000);

struct GaussianWindowRow {
  double sigma = 0.0;
  double eps = 0.0;
  double q = 0.0;
  double q_scaled = 0.0;      ///< Q sigma / eps
  double shape = 0.0;         ///< two-regime shape at eps with D* = dstar
  double shape_scaled = 0.0;  ///< shape sigma / eps
  double ratio = 0.0;         ///< Q / shape
};

struct GaussianWindowReport {
  std::vector<GaussianWindowRow> rows;
  double dstar = 0.0;
  double L = 0.0;
  double q_scaled_max = 0.0;
  double shape_scaled_min = 0.0;
  double shape_scaled_max = 0.0;
  double ratio_max = 0.0;
};

/// Gaussian summands N(0, sigma^2) with weights a (D* = dstar supplied by the
/// caller): Q(F_a, eps) sigma/eps and the two-regime shape on
/// eps in [sigma/dstar, sigma], eps_points log-spaced windows per sigma.
GaussianWindowReport study_gaussian_window(std::span<const double> sigma_list, const WeightVector& a, double dstar,
                                           double L, std::size_t eps_points = 25);

struct SpreadRelationRow {
  double tau_over_sigma = 0.0;
  double m = 0.0;
  double ratio = 0.0;  ///< 1/sqrt(M(tau)) / (1 + tau/sigma)
};

/// 1/sqrt(M(tau)) against 1 + tau/sigma for a Gaussian law, log-spaced tau/sigma.
std::vector<SpreadRelationRow> gaussian_spread_relation(double sigma, double lo, double hi, std::size_t points);

struct ImprovementRow {
  std::string instance;
  double m1 = 0.0;
  double L = 0.0;
  double D = 0.0;
  double lcd_shape = 0.0;
  double vershynin_shape = 0.0;
  double ratio = 0.0;  ///< lcd_shape / vershynin_shape = 1 / (L sqrt M(1))
  bool hypothesis = false;  ///< L^2 >= 1/M(1) and the lattice condition certified up to D
};

struct ImprovementReport {
  std::vector<ImprovementRow> rows;
  double L = 0.0;
};

/// The unit-vector LCD shape against L/D at D = D*(a).
ImprovementReport improvement_report(const InstanceFamily& family, double L);

std::string to_csv(const CalibrationReport& r);
std::string to_csv(const LowerBoundReport& r);
std::string to_csv(const ImprovementReport& r);
/// Long format: family, instance, eps, q, shape, ratio for included rows.
std::string to_long_csv(const CalibrationReport& r);

/// Worker threads for harness loops: LOFO_THREADS if set (>= 1), else the
/// hardware concurrency.
std::size_t harness_threads();

}  // namespace lofo
