#pragma once

// Distance from the ray t*a to the integer lattice, the two growth thresholds,
// and certified least common denominators.
//
// Every search here rests on one fact: t -> dist(t a, Z^n) is ||a||-Lipschitz
// and both thresholds are nondecreasing in t. So if dist(u) - ||a|| h >= thr(u + h),
// no point of [u, u + h] satisfies dist < thr, and the scan may skip it.

#include <cstddef>
#include <optional>
#include <string>

#include "lofo/weights.hpp"

namespace lofo {

enum class LcdVariant { D, D_star };

const char* to_string(LcdVariant v) noexcept;
LcdVariant parse_variant(const std::string& name);

/// min over m in Z^n of ||t a - m||, rounding half away from zero.
double dist_to_lattice(double t, const WeightVector& a);

/// t/6 for t < eL, L sqrt(log(t/L)) for t >= eL (discontinuous at eL).
double f_threshold(double t, double L);

/// L sqrt(log_+(t/L)).
double log_plus_threshold(double t, double L);

struct LcdResult {
  double value = 0.0;         ///< left end of the certified bracket
  double error_radius = 0.0;  ///< bracket width, <= tol
  double witness_t = 0.0;     ///< dist(witness a) < threshold, witness <= value + error_radius
  double L = 0.0;
  LcdVariant variant = LcdVariant::D_star;
  double scan_start = 0.0;
  double horizon = 0.0;  ///< the infimum never exceeds this (may be +inf)
  bool marginal = false;  ///< bracket closed at floating resolution without a strict witness
  std::size_t evaluations = 0;
};

/// inf{t > 0 : dist(t a, Z^n) < threshold(t)} with threshold
/// log_plus_threshold(t, L) (variant D) or f_threshold(t ||a||, L) (D_star).
LcdResult lcd(const WeightVector& a, double L, LcdVariant variant, double tol = 1e-6);

/// Search horizon: beyond it the threshold exceeds sqrt(n)/2 >= dist, with n
/// the number of nonzero coordinates.
double lcd_horizon(const WeightVector& a, double L, LcdVariant variant);

struct ConditionCheck {
  bool holds = true;
  bool vacuous = false;   ///< D < 1/(2 ||a||_inf): nothing to check
  bool marginal = false;  ///< a touch point at floating resolution, not a strict violation
  std::optional<double> violation_t;
  double dist_at_violation = 0.0;
  double threshold_at_violation = 0.0;
  double checked_from = 0.0;
  double checked_to = 0.0;
  std::size_t evaluations = 0;
};

/// Certifies dist(t a, Z^n) >= f_threshold(t ||a||, L) for every
/// t in [1/(2 ||a||_inf), D]; on failure returns a t where the strict
/// reverse inequality is demonstrated.
ConditionCheck check_lattice_condition(const WeightVector& a, double L, double D);

/// Same condition for unit vectors, where the threshold is f_threshold(t, L).
/// Throws PreconditionError unless ||a|| = 1 within 1e-9.
ConditionCheck check_unit_lattice_condition(const WeightVector& a, double L, double D);

}  // namespace lofo
