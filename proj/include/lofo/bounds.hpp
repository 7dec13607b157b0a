#pragma once

// Right-hand sides of the concentration inequalities, each with its absolute
// constant set to 1. Calibrating the constants is the harness's job.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lofo/finite_dist.hpp"
#include "lofo/spread.hpp"
#include "lofo/weights.hpp"

namespace lofo {

enum class ShapeId {
  kolmogorov_rogozin,  ///< lambda (sum lambda_k^2 (1 - Q_k))^{-1/2}
  esseen,              ///< lambda (sum lambda_k^2 M_k(lambda_k))^{-1/2}
  vershynin,           ///< L / D
  lcd_unit,            ///< 1 / (D sqrt M(1)), unit a
  lcd_general,         ///< 1 / (||a|| D sqrt M(1))
  lcd_scaled,          ///< 1 / (||a|| D sqrt M(tau)), window tau/D
  no_arithmetic,       ///< ||a||_inf / (||a|| sqrt M(tau)), window ||a||_inf tau
  optimal_small_eps,   ///< 1 / (||a|| D* sqrt M(eps D*)), eps <= eps0
  optimal_large_eps,   ///< eps L / (eps0 ||a|| D*), eps >= eps0
  optimal_atom,        ///< 1 / (||a|| D* sqrt P), eps -> 0
  bernoulli_min,       ///< min{(eps + 1/D*) / sqrt(p(1-p)), 1}
};

const char* to_string(ShapeId id) noexcept;
ShapeId parse_shape(const std::string& name);
std::vector<ShapeId> all_shapes();

struct BoundShape {
  ShapeId id = ShapeId::lcd_unit;
  std::map<std::string, double> params;
  double value = 0.0;
};

BoundShape shape_kr(double lambda, std::span<const double> lambda_k, std::span<const double> q_k);
BoundShape shape_esseen(double lambda, std::span<const double> lambda_k, std::span<const double> m_k);
BoundShape shape_vershynin(double L, double D);
BoundShape shape_lcd_unit(double D, double m1);
BoundShape shape_lcd_general(double D, double norm_a, double m1);
BoundShape shape_lcd_scaled(double D, double norm_a, double m_tau);
BoundShape shape_no_arithmetic(double norm_a, double norm_inf, double m_tau);
BoundShape shape_bernoulli_min(double p, double eps, double d_star);

/// Solution of L^2 = 1/M(tau0).
struct RootSolution {
  double tau0 = 0.0;
  double eps0 = 0.0;  ///< tau0 / D*, when D* is supplied (else 0)
  double residual = 0.0;
  std::size_t iterations = 0;
  double L = 0.0;
  Method backend = Method::exact;
};

/// Exact and sampled backends solve in closed form on the final piece of the
/// piecewise A + B/tau^2 profile; quadrature backends bracket geometrically
/// from tau = 1 and bisect until the residual is below tol.
/// Throws PreconditionError when L^2 <= 1/P.
RootSolution solve_tau0(const SpreadModel& model, double L, double tol = 1e-10);
RootSolution solve_tau0(const FiniteDist& symmetrized, double L, double tol = 1e-10);

/// D0(eps) = tau0 / eps.
double solve_D0(const SpreadModel& model, double L, double eps, double tol = 1e-10);
/// Independent route: bisection on D -> M(eps D) = 1/L^2.
double solve_D0_direct(const SpreadModel& model, double L, double eps, double tol = 1e-12);

/// Two-regime bound at window eps: the small-eps form for eps <= eps0, the
/// linear form beyond, and the atom form at eps = 0.
BoundShape shape_optimal(const SpreadModel& model, double norm_a, double L, double eps, double d_star,
                         const RootSolution& root);

struct GadgetReport {
  std::string name;
  std::size_t points = 0;
  std::size_t violations = 0;
  double worst_t = 0.0;
  double worst_excess = 0.0;  ///< max (lhs - rhs) / rhs over the grid
  bool holds() const noexcept { return violations == 0; }
};

/// |cf(t)| <= exp(-E(1 - cos(t X~)) / 2) on the grid, exact finite sums.
GadgetReport gadget_cf_bound(const FiniteDist& law, std::span<const double> t_grid);

/// exp(-gamma/2 sum_k (1 - cos(2 a_k z t))).
double gadget_h(const WeightVector& a, double z, double gamma, double t);

struct HChecks {
  GadgetReport rescaling;     ///< H_{z,g}(t) = H_{y,g}(z t / y)
  GadgetReport power;         ///< H_{z,g}(t) = H_{z,1}(t)^g
  GadgetReport lattice;       ///< H_{pi,1}(t) <= exp(-4 dist(t a, Z^n)^2)
  GadgetReport near_origin;   ///< H_{pi,1}(t) <= exp(-4 ||a||^2 t^2), |t| <= 1/(2||a||_inf)
  bool all_hold() const noexcept {
    return rescaling.holds() && power.holds() && lattice.holds() && near_origin.holds();
  }
};

HChecks gadget_h_checks(const WeightVector& a, double z, double y, double gamma, std::span<const double> t_grid);

}  // namespace lofo
