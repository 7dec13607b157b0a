#include "lofo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lofo/errors.hpp"

namespace lofo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_L(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw PreconditionError("L must be positive and finite");
}

struct Bracket {
  double lo;
  double hi;
  bool marginal;
};

// dist(t a) - threshold(t), with the bookkeeping of a left-to-right scan.
class Scanner {
 public:
  Scanner(const WeightVector& a, double L, LcdVariant variant) : a_(a), L_(L), variant_(variant) {}

  double dist(double t) {
    ++evaluations;
    return dist_to_lattice(t, a_);
  }

  double threshold(double t) const {
    return variant_ == LcdVariant::D ? log_plus_threshold(t, L_) : f_threshold(t * a_.norm(), L_);
  }

  // First point of S = {dist < threshold} in [from, to], bracketed to width
  // <= tol. Requires every point left of `from` to be outside S.
  std::optional<Bracket> first_hit(double from, double to, double tol) {
    double t = from;
    double d = dist(t);
    if (d < threshold(t)) return Bracket{t, t, false};
    while (t < to) {
      const double h = safe_step(t, d);
      if (h >= tol) {
        t = std::min(t + h, to);
        d = dist(t);
        if (d < threshold(t)) return Bracket{t, t, false};
        continue;
      }
      double v = std::min(t + tol, to);
      while (v - t > tol) v = std::nextafter(v, t);  // t + tol can round up
      const double dv = dist(v);
      if (auto b = local(t, v, d, dv)) return b;
      t = v;
      d = dv;
    }
    return std::nullopt;
  }

  std::size_t evaluations = 0;

 private:
  // Largest certified h found by fixed-point iteration on
  // d - ||a|| h >= threshold(t + h), or 0 if none.
  double safe_step(double t, double d) const {
    const double norm = a_.norm();
    const double gap = d - threshold(t);
    if (!(gap > 0.0)) return 0.0;
    double h = gap / norm;
    for (int iter = 0; iter < 64; ++iter) {
      const double thr = threshold(t + h);
      if (d - norm * h >= thr) return h;
      double next = (d - thr) / norm;
      if (!(next > 0.0) || next >= h) next = 0.5 * h;
      h = next;
    }
    return 0.0;
  }

  bool certified_free(double u, double v, double du, double dv) const {
    const double lower = 0.5 * (du + dv - a_.norm() * (v - u));
    return lower >= threshold(v);
  }

  std::optional<Bracket> local(double u, double v, double du, double dv) {
    if (certified_free(u, v, du, dv)) return std::nullopt;
    if (dv < threshold(v)) return Bracket{u, v, false};
    const double resolution = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
    if (v - u <= resolution) return Bracket{u, v, true};
    const double m = 0.5 * (u + v);
    const double dm = dist(m);
    if (dm < threshold(m)) return Bracket{u, m, false};
    if (auto b = local(u, m, du, dm)) return b;
    return local(m, v, dm, dv);
  }

  const WeightVector& a_;
  double L_;
  LcdVariant variant_;
};

double scan_start(const WeightVector& a, double L, LcdVariant variant) {
  const double t0 = 0.5 / a.norm_inf();
  if (variant == LcdVariant::D_star) return t0;
  // The log threshold vanishes on (0, L]; below t0 dist = t ||a|| exceeds it
  // whenever ||a|| >= 1.
  return (a.norm() >= 1.0 && t0 > L) ? t0 : L;
}

}  // namespace

const char* to_string(LcdVariant v) noexcept { return v == LcdVariant::D ? "d" : "d_star"; }

LcdVariant parse_variant(const std::string& name) {
  if (name == "d" || name == "D") return LcdVariant::D;
  if (name == "d_star" || name == "D_star" || name == "dstar") return LcdVariant::D_star;
  throw PreconditionError("unknown LCD variant '" + name + "' (expected d or d_star)");
}

double dist_to_lattice(double t, const WeightVector& a) {
  long double sq = 0.0L;
  for (double ak : a.coords()) {
    const double x = t * ak;
    const double r = x - std::round(x);
    sq += static_cast<long double>(r) * r;
  }
  return static_cast<double>(std::sqrt(sq));
}

double f_threshold(double t, double L) {
  require_L(L);
  if (t < std::numbers::e * L) return t / 6.0;
  return L * std::sqrt(std::log(t / L));
}

double log_plus_threshold(double t, double L) {
  require_L(L);
  if (!(t > L)) return 0.0;
  return L * std::sqrt(std::log(t / L));
}

double lcd_horizon(const WeightVector& a, double L, LcdVariant variant) {
  require_L(L);
  const double n = static_cast<double>(a.nonzero_count());
  const double exponent = n / (4.0 * L * L);
  if (exponent > 700.0) return kInf;
  if (variant == LcdVariant::D) return L * std::exp(exponent);
  return L * std::max(std::numbers::e, std::exp(exponent)) / a.norm();
}

LcdResult lcd(const WeightVector& a, double L, LcdVariant variant, double tol) {
  require_L(L);
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  Scanner scan(a, L, variant);
  LcdResult out;
  out.L = L;
  out.variant = variant;
  out.scan_start = scan_start(a, L, variant);
  out.horizon = lcd_horizon(a, L, variant);

  // Past the horizon the condition holds everywhere, so the scan cannot run
  // off; the small overshoot covers rounding at the horizon itself.
  const double end = std::isinf(out.horizon) ? kInf : out.horizon * (1.0 + 1e-9) + tol;
  const auto hit = scan.first_hit(out.scan_start, end, tol);
  out.evaluations = scan.evaluations;
  if (!hit) throw std::logic_error("lcd scan passed its horizon without a crossing");
  out.value = hit->lo;
  out.error_radius = hit->hi - hit->lo;
  out.witness_t = hit->hi;
  out.marginal = hit->marginal;
  return out;
}

ConditionCheck check_lattice_condition(const WeightVector& a, double L, double D) {
  require_L(L);
  ConditionCheck out;
  const double t0 = 0.5 / a.norm_inf();
  out.checked_from = t0;
  out.checked_to = D;
  if (D < t0) {
    out.vacuous = true;
    return out;
  }
  Scanner scan(a, L, LcdVariant::D_star);
  const double tol = std::max(1e-12, 1e-9 * D);
  const auto hit = scan.first_hit(t0, D, tol);
  out.evaluations = scan.evaluations;
  if (!hit) return out;
  if (hit->marginal) {
    out.marginal = true;
    return out;
  }
  const double t = hit->hi;
  out.holds = false;
  out.violation_t = t;
  out.dist_at_violation = dist_to_lattice(t, a);
  out.threshold_at_violation = f_threshold(t * a.norm(), L);
  return out;
}

ConditionCheck check_unit_lattice_condition(const WeightVector& a, double L, double D) {
  if (std::abs(a.norm() - 1.0) > 1e-9) {
    throw PreconditionError("unit-norm lattice condition needs ||a|| = 1; use the general form");
  }
  return check_lattice_condition(a, L, D);
}

}  // namespace lofo
