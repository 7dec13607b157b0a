#include "lofo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lofo/characteristic.hpp"
#include "lofo/errors.hpp"
#include "lofo/lattice.hpp"

namespace lofo {
namespace {

constexpr double kIdentityTolerance = 1e-9;
constexpr double kInequalitySlack = 1e-12;

struct ShapeName {
  ShapeId id;
  const char* name;
};

constexpr ShapeName kShapeNames[] = {
    {ShapeId::kolmogorov_rogozin, "kolmogorov_rogozin"},
    {ShapeId::esseen, "esseen"},
    {ShapeId::vershynin, "vershynin"},
    {ShapeId::lcd_unit, "lcd_unit"},
    {ShapeId::lcd_general, "lcd_general"},
    {ShapeId::lcd_scaled, "lcd_scaled"},
    {ShapeId::no_arithmetic, "no_arithmetic"},
    {ShapeId::optimal_small_eps, "optimal_small_eps"},
    {ShapeId::optimal_large_eps, "optimal_large_eps"},
    {ShapeId::optimal_atom, "optimal_atom"},
    {ShapeId::bernoulli_min, "bernoulli_min"},
};

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw PreconditionError(std::string(what) + " must be positive");
}

void require_spread(double m, const char* what) {
  if (!(m > 0.0)) throw PreconditionError(std::string(what) + " = 0: degenerate distribution");
  if (m > 1.0 + 1e-12) throw PreconditionError(std::string(what) + " exceeds 1");
}

BoundShape sum_shape(ShapeId id, double lambda, std::span<const double> lambda_k, std::span<const double> factors,
                     const char* factor_name) {
  require_positive(lambda, "lambda");
  if (lambda_k.empty() || lambda_k.size() != factors.size()) {
    throw PreconditionError("lambda_k and per-summand values must be nonempty and aligned");
  }
  long double sum = 0.0L;
  for (std::size_t k = 0; k < lambda_k.size(); ++k) {
    require_positive(lambda_k[k], "lambda_k");
    if (lambda_k[k] > lambda * (1.0 + 1e-12)) throw PreconditionError("every lambda_k must be <= lambda");
    sum += static_cast<long double>(lambda_k[k]) * lambda_k[k] * factors[k];
  }
  if (!(sum > 0.0L)) {
    throw PreconditionError(std::string("divergent shape: every ") + factor_name + " term vanishes");
  }
  BoundShape s;
  s.id = id;
  s.params = {{"lambda", lambda}, {"n", static_cast<double>(lambda_k.size())}};
  s.value = lambda / std::sqrt(static_cast<double>(sum));
  return s;
}

}  // namespace

const char* to_string(ShapeId id) noexcept {
  for (const auto& s : kShapeNames) {
    if (s.id == id) return s.name;
  }
  return "unknown";
}

ShapeId parse_shape(const std::string& name) {
  for (const auto& s : kShapeNames) {
    if (name == s.name) return s.id;
  }
  throw PreconditionError("unknown bound shape '" + name + "'");
}

std::vector<ShapeId> all_shapes() {
  std::vector<ShapeId> out;
  for (const auto& s : kShapeNames) out.push_back(s.id);
  return out;
}

BoundShape shape_kr(double lambda, std::span<const double> lambda_k, std::span<const double> q_k) {
  std::vector<double> spread(q_k.size());
  for (std::size_t k = 0; k < q_k.size(); ++k) {
    if (!(q_k[k] >= 0.0 && q_k[k] <= 1.0)) throw PreconditionError("Q_k must lie in [0, 1]");
    spread[k] = 1.0 - q_k[k];
  }
  return sum_shape(ShapeId::kolmogorov_rogozin, lambda, lambda_k, spread, "1 - Q_k");
}

BoundShape shape_esseen(double lambda, std::span<const double> lambda_k, std::span<const double> m_k) {
  for (double m : m_k) {
    if (!(m >= 0.0 && m <= 1.0)) throw PreconditionError("M_k must lie in [0, 1]");
  }
  return sum_shape(ShapeId::esseen, lambda, lambda_k, m_k, "M_k");
}

BoundShape shape_vershynin(double L, double D) {
  require_positive(L, "L");
  require_positive(D, "D");
  return {ShapeId::vershynin, {{"L", L}, {"D", D}}, L / D};
}

BoundShape shape_lcd_unit(double D, double m1) {
  require_positive(D, "D");
  require_spread(m1, "M(1)");
  return {ShapeId::lcd_unit, {{"D", D}, {"M1", m1}}, 1.0 / (D * std::sqrt(m1))};
}

BoundShape shape_lcd_general(double D, double norm_a, double m1) {
  require_positive(D, "D");
  require_positive(norm_a, "||a||");
  require_spread(m1, "M(1)");
  return {ShapeId::lcd_general, {{"D", D}, {"norm_a", norm_a}, {"M1", m1}}, 1.0 / (norm_a * D * std::sqrt(m1))};
}

BoundShape shape_lcd_scaled(double D, double norm_a, double m_tau) {
  require_positive(D, "D");
  require_positive(norm_a, "||a||");
  require_spread(m_tau, "M(tau)");
  return {ShapeId::lcd_scaled,
          {{"D", D}, {"norm_a", norm_a}, {"M_tau", m_tau}},
          1.0 / (norm_a * D * std::sqrt(m_tau))};
}

BoundShape shape_no_arithmetic(double norm_a, double norm_inf, double m_tau) {
  require_positive(norm_a, "||a||");
  require_positive(norm_inf, "||a||_inf");
  require_spread(m_tau, "M(tau)");
  return {ShapeId::no_arithmetic,
          {{"norm_a", norm_a}, {"norm_inf", norm_inf}, {"M_tau", m_tau}},
          norm_inf / (norm_a * std::sqrt(m_tau))};
}

BoundShape shape_bernoulli_min(double p, double eps, double d_star) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("p must lie in (0, 1)");
  if (!(eps >= 0.0)) throw PreconditionError("eps must be >= 0");
  require_positive(d_star, "D*");
  const double v = std::min((eps + 1.0 / d_star) / std::sqrt(p * (1.0 - p)), 1.0);
  return {ShapeId::bernoulli_min, {{"p", p}, {"eps", eps}, {"D_star", d_star}}, v};
}

// ---------------------------------------------------------------------------
// Root solving

RootSolution solve_tau0(const SpreadModel& model, double L, double tol) {
  require_positive(L, "L");
  const double target = 1.0 / (L * L);
  if (!(target < model.survival())) {
    throw PreconditionError("L^2 <= 1/P: no tau0 with L^2 = 1/M(tau0) (need L^2 > 1/P(X~ != 0))");
  }
  RootSolution out;
  out.L = L;
  out.backend = model.method();
  if (const auto* profile = model.profile()) {
    const auto root = profile->solve(target);
    out.tau0 = root.tau;
    out.iterations = root.iterations;
    out.residual = std::abs(profile->m(root.tau) - target);
    return out;
  }

  double lo = 1.0;
  double hi = 1.0;
  std::size_t iterations = 0;
  if (model.m(1.0) >= target) {
    while (model.m(hi) > target) {
      lo = hi;
      hi *= 2.0;
      if (++iterations > 2000) throw std::runtime_error("tau0 bracket expansion failed");
    }
  } else {
    while (model.m(lo) < target) {
      hi = lo;
      lo *= 0.5;
      if (++iterations > 2000) throw std::runtime_error("tau0 bracket contraction failed");
    }
  }
  double mid = std::sqrt(lo * hi);
  double m_mid = model.m(mid);
  while (std::abs(m_mid - target) > tol && hi - lo > 1e-15 * hi) {
    if (m_mid >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    m_mid = model.m(mid);
    ++iterations;
  }
  out.tau0 = mid;
  out.iterations = iterations;
  out.residual = std::abs(m_mid - target);
  return out;
}

RootSolution solve_tau0(const FiniteDist& symmetrized, double L, double tol) {
  return solve_tau0(SpreadModel::of(symmetrized), L, tol);
}

double solve_D0(const SpreadModel& model, double L, double eps, double tol) {
  require_positive(eps, "eps");
  return solve_tau0(model, L, tol).tau0 / eps;
}

double solve_D0_direct(const SpreadModel& model, double L, double eps, double tol) {
  require_positive(L, "L");
  require_positive(eps, "eps");
  const double target = 1.0 / (L * L);
  if (!(target < model.survival())) throw PreconditionError("L^2 <= 1/P: D0(eps) does not exist");
  auto m_of_d = [&](double d) { return model.m(eps * d); };
  double lo = 1.0;
  double hi = 1.0;
  while (m_of_d(hi) > target) hi *= 2.0;
  while (m_of_d(lo) < target) lo *= 0.5;
  for (int i = 0; i < 400 && hi - lo > tol * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (m_of_d(mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BoundShape shape_optimal(const SpreadModel& model, double norm_a, double L, double eps, double d_star,
                         const RootSolution& root) {
  require_positive(norm_a, "||a||");
  require_positive(d_star, "D*");
  require_positive(L, "L");
  if (!(eps >= 0.0)) throw PreconditionError("eps must be >= 0");
  if (!(1.0 / (L * L) < model.survival())) throw PreconditionError("L^2 <= 1/P: optimal bound precondition fails");
  const double eps0 = root.tau0 / d_star;
  BoundShape s;
  s.params = {{"eps", eps}, {"eps0", eps0}, {"L", L}, {"D_star", d_star}, {"norm_a", norm_a}};
  if (eps == 0.0) {
    s.id = ShapeId::optimal_atom;
    s.params["P"] = model.survival();
    s.value = 1.0 / (norm_a * d_star * std::sqrt(model.survival()));
  } else if (eps <= eps0) {
    const double m = model.m(eps * d_star);
    require_spread(m, "M(eps D*)");
    s.id = ShapeId::optimal_small_eps;
    s.params["M"] = m;
    s.value = 1.0 / (norm_a * d_star * std::sqrt(m));
  } else {
    s.id = ShapeId::optimal_large_eps;
    s.value = eps * L / (eps0 * norm_a * d_star);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Gadgets

GadgetReport gadget_cf_bound(const FiniteDist& law, std::span<const double> t_grid) {
  const FiniteDist g = symmetrize(law);
  const auto x = g.atoms();
  const auto m = g.masses();
  GadgetReport r;
  r.name = "cf_bound";
  for (double t : t_grid) {
    long double spread = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) spread += m[i] * (1.0 - std::cos(t * x[i]));
    const double lhs = std::abs(cf_eval(law, t));
    const double rhs = std::exp(-0.5 * static_cast<double>(spread));
    const double excess = (lhs - rhs) / rhs;
    ++r.points;
    if (r.points == 1 || excess > r.worst_excess) {
      r.worst_excess = excess;
      r.worst_t = t;
    }
    if (excess > kInequalitySlack) ++r.violations;
  }
  return r;
}

double gadget_h(const WeightVector& a, double z, double gamma, double t) {
  require_positive(gamma, "gamma");
  long double s = 0.0L;
  for (double ak : a.coords()) s += 1.0 - std::cos(2.0 * ak * z * t);
  return std::exp(-0.5 * gamma * static_cast<double>(s));
}

HChecks gadget_h_checks(const WeightVector& a, double z, double y, double gamma, std::span<const double> t_grid) {
  require_positive(gamma, "gamma");
  if (y == 0.0) throw PreconditionError("rescaling point y must be nonzero");
  HChecks c;
  c.rescaling.name = "rescaling_identity";
  c.power.name = "power_identity";
  c.lattice.name = "cosine_lattice";
  c.near_origin.name = "cosine_near_origin";

  auto record = [](GadgetReport& r, double t, double excess, double tol) {
    ++r.points;
    if (r.points == 1 || excess > r.worst_excess) {
      r.worst_excess = excess;
      r.worst_t = t;
    }
    if (excess > tol) ++r.violations;
  };

  const double t_small = 0.5 / a.norm_inf();
  const double norm2 = a.norm() * a.norm();
  for (double t : t_grid) {
    const double h = gadget_h(a, z, gamma, t);
    const double h_rescaled = gadget_h(a, y, gamma, z * t / y);
    record(c.rescaling, t, std::abs(h - h_rescaled) / std::max(h, std::numeric_limits<double>::min()),
           kIdentityTolerance);
    const double h_power = std::pow(gadget_h(a, z, 1.0, t), gamma);
    record(c.power, t, std::abs(h - h_power) / std::max(h, std::numeric_limits<double>::min()), kIdentityTolerance);

    const double h_pi = gadget_h(a, std::numbers::pi, 1.0, t);
    const double d = dist_to_lattice(t, a);
    const double lattice_rhs = std::exp(-4.0 * d * d);
    record(c.lattice, t, (h_pi - lattice_rhs) / lattice_rhs, kInequalitySlack);
    if (std::abs(t) <= t_small) {
      const double origin_rhs = std::exp(-4.0 * norm2 * t * t);
      record(c.near_origin, t, (h_pi - origin_rhs) / origin_rhs, kInequalitySlack);
    }
  }
  return c;
}

}  // namespace lofo
