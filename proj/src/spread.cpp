#include "lofo/spread.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "lofo/errors.hpp"
#include "lofo/quadrature.hpp"

namespace lofo {
namespace {

constexpr double kCertificateSlack = 1e-12;

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw PreconditionError("tau must be positive and finite");
}

void require_symmetric(const FiniteDist& g) {
  if (!g.is_symmetric()) throw PreconditionError("law is not symmetric about 0; symmetrize it first");
}

double gaussian_m(double s, double tau, double tol) {
  // X~ ~ N(0, s^2). Integrate against the density; beyond 40 s the density is
  // below double precision, so both pieces are cut there.
  const double norm = 1.0 / (s * std::sqrt(2.0 * std::numbers::pi));
  auto density = [s, norm](double x) { return norm * std::exp(-0.5 * (x / s) * (x / s)); };
  const double cut = 40.0 * s;
  QuadratureOptions opt;
  opt.tol = 0.25 * tol;

  double inner = 0.0;
  const double inner_end = std::min(tau, cut);
  if (inner_end > 0.0) {
    auto r = adaptive_simpson([&](double x) { return (x / tau) * (x / tau) * density(x); }, 0.0, inner_end, opt);
    if (!r.converged) throw QuadratureError("Gaussian spread quadrature did not converge", r.value);
    inner = r.value;
  }
  double tail = 0.0;
  if (tau < cut) {
    auto r = adaptive_simpson(density, tau, cut, opt);
    if (!r.converged) throw QuadratureError("Gaussian tail quadrature did not converge", r.value);
    tail = r.value;
  }
  return std::clamp(2.0 * (inner + tail), 0.0, 1.0);
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::exact:
      return "exact";
    case Method::closed_form:
      return "closed_form";
    case Method::quadrature:
      return "quadrature";
    case Method::monte_carlo:
      return "monte_carlo";
  }
  return "unknown";
}

double m_functional(const FiniteDist& symmetrized, double tau) {
  require_tau(tau);
  require_symmetric(symmetrized);
  const auto x = symmetrized.atoms();
  const auto m = symmetrized.masses();
  long double sum = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] / tau;
    sum += static_cast<long double>(m[i]) * std::min(r * r, 1.0);
  }
  return std::clamp(static_cast<double>(sum), 0.0, 1.0);
}

SpreadValue m_functional(const AnalyticDist& symmetrized, double tau, const SpreadOptions& options) {
  require_tau(tau);
  if (!symmetrized.is_symmetric()) throw PreconditionError("law is not symmetric about 0");
  if (const auto* g = std::get_if<Gaussian>(&symmetrized.kind())) {
    return {gaussian_m(g->sigma, tau, options.tol), 0.0, Method::quadrature, 0};
  }
  if (options.samples < 2) throw PreconditionError("Monte-Carlo spread needs at least two samples");
  const auto profile = SpreadProfile::sampled(symmetrized, options.samples, options.seed);
  return {profile.m(tau), profile.std_error(tau), Method::monte_carlo, options.samples};
}

double atom_survival(const FiniteDist& symmetrized) {
  require_symmetric(symmetrized);
  long double s = 0.0L;
  const auto x = symmetrized.atoms();
  const auto m = symmetrized.masses();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!same_atom(x[i], 0.0)) s += m[i];
  }
  return static_cast<double>(s);
}

double atom_survival(const AnalyticDist&) { return 1.0; }

// ---------------------------------------------------------------------------
// SpreadProfile

SpreadProfile SpreadProfile::from_law(const FiniteDist& symmetrized) {
  require_symmetric(symmetrized);
  std::vector<double> abs_values;
  std::vector<double> masses;
  const auto x = symmetrized.atoms();
  const auto m = symmetrized.masses();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (same_atom(x[i], 0.0)) continue;
    abs_values.push_back(std::abs(x[i]));
    masses.push_back(m[i]);
  }
  SpreadProfile p;
  p.build(std::move(abs_values), std::move(masses));
  return p;
}

SpreadProfile SpreadProfile::from_samples(std::vector<double> draws) {
  if (draws.size() < 2) throw PreconditionError("need at least two draws");
  const std::size_t n = draws.size();
  const double w = 1.0 / static_cast<double>(n);
  std::vector<double> abs_values;
  abs_values.reserve(n);
  for (double d : draws) {
    if (d != 0.0) abs_values.push_back(std::abs(d));
  }
  std::vector<double> masses(abs_values.size(), w);
  SpreadProfile p;
  p.build(std::move(abs_values), std::move(masses));
  p.samples_ = n;
  return p;
}

SpreadProfile SpreadProfile::sampled(const AnalyticDist& symmetrized, std::size_t samples, std::uint64_t seed) {
  Engine rng(seed);
  std::vector<double> draws(samples);
  for (double& d : draws) d = symmetrized.sample(rng);
  return from_samples(std::move(draws));
}

void SpreadProfile::build(std::vector<double> abs_values, std::vector<double> masses) {
  std::vector<std::size_t> order(abs_values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return abs_values[i] < abs_values[j]; });

  std::vector<double> b;
  std::vector<double> w;
  for (std::size_t idx : order) {
    if (!b.empty() && b.back() == abs_values[idx]) {
      w.back() += masses[idx];
    } else {
      b.push_back(abs_values[idx]);
      w.push_back(masses[idx]);
    }
  }
  const std::size_t k = b.size();
  tail_.assign(k + 1, 0.0);
  second_.assign(k + 1, 0.0);
  fourth_.assign(k + 1, 0.0);
  long double acc = 0.0L;
  for (std::size_t i = k; i-- > 0;) {
    acc += w[i];
    tail_[i] = static_cast<double>(acc);
  }
  long double s2 = 0.0L;
  long double s4 = 0.0L;
  for (std::size_t i = 0; i < k; ++i) {
    const long double x2 = static_cast<long double>(b[i]) * b[i];
    s2 += w[i] * x2;
    s4 += w[i] * x2 * x2;
    second_[i + 1] = static_cast<double>(s2);
    fourth_[i + 1] = static_cast<double>(s4);
  }
  survival_ = tail_[0];
  breakpoints_ = std::move(b);
}

std::size_t SpreadProfile::count_le(double tau) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), tau) -
                                  breakpoints_.begin());
}

double SpreadProfile::m(double tau) const {
  require_tau(tau);
  const std::size_t k = count_le(tau);
  return std::clamp(second_[k] / (tau * tau) + tail_[k], 0.0, 1.0);
}

double SpreadProfile::std_error(double tau) const {
  if (samples_ < 2) return 0.0;
  require_tau(tau);
  const std::size_t k = count_le(tau);
  const double t2 = tau * tau;
  const double mean = second_[k] / t2 + tail_[k];
  const double mean_sq = fourth_[k] / (t2 * t2) + tail_[k];
  const double var = std::max(0.0, mean_sq - mean * mean);
  return std::sqrt(var / static_cast<double>(samples_ - 1));
}

SpreadProfile::Root SpreadProfile::solve(double target) const {
  if (!(target > 0.0) || !(target < survival_)) {
    throw PreconditionError("M(tau) = target has no root: need 0 < target < P");
  }
  const std::size_t k_count = breakpoints_.size();
  auto m_at_break = [&](std::size_t k) {
    const double b = breakpoints_[k];
    return second_[k + 1] / (b * b) + tail_[k + 1];
  };
  // Largest k with M(b_k) >= target; M(b_0) = P > target.
  std::size_t lo = 0;
  std::size_t hi = k_count;  // exclusive
  std::size_t iterations = 0;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    ++iterations;
    if (m_at_break(mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double a = tail_[lo + 1];
  const double b = second_[lo + 1];
  double tau = std::sqrt(b / (target - a));
  tau = std::max(tau, breakpoints_[lo]);
  if (lo + 1 < k_count) tau = std::min(tau, breakpoints_[lo + 1]);
  return {tau, iterations};
}

// ---------------------------------------------------------------------------
// SpreadModel

SpreadModel SpreadModel::of(const FiniteDist& symmetrized) {
  SpreadModel s;
  s.profile_ = SpreadProfile::from_law(symmetrized);
  s.survival_ = s.profile_->survival();
  s.method_ = Method::exact;
  return s;
}

SpreadModel SpreadModel::of(const AnalyticDist& symmetrized, const SpreadOptions& options) {
  if (!symmetrized.is_symmetric()) throw PreconditionError("law is not symmetric about 0");
  SpreadModel s;
  s.survival_ = atom_survival(symmetrized);
  s.quadrature_tol_ = options.tol;
  if (const auto* g = std::get_if<Gaussian>(&symmetrized.kind())) {
    s.gaussian_sigma_ = g->sigma;
    s.method_ = Method::quadrature;
    return s;
  }
  s.profile_ = SpreadProfile::sampled(symmetrized, options.samples, options.seed);
  s.method_ = Method::monte_carlo;
  return s;
}

double SpreadModel::m(double tau) const {
  if (profile_) return profile_->m(tau);
  require_tau(tau);
  return gaussian_m(gaussian_sigma_, tau, quadrature_tol_);
}

double SpreadModel::std_error(double tau) const { return profile_ ? profile_->std_error(tau) : 0.0; }

// ---------------------------------------------------------------------------
// Mixture decomposition

MixtureDecomposition mixture_decompose(const FiniteDist& symmetrized, double r) {
  if (!(r > 1.0 && r <= std::numbers::sqrt2)) throw PreconditionError("annulus ratio r must lie in (1, sqrt 2]");
  require_symmetric(symmetrized);

  MixtureDecomposition out;
  out.r = r;
  out.q = symmetrized.mass_at(0.0);
  out.m1 = m_functional(symmetrized, 1.0);

  const double log_r = std::log(r);
  auto annulus_index = [&](double ax) {
    if (ax > 1.0) return 0;
    int j = static_cast<int>(std::floor(-std::log(ax) / log_r)) + 1;
    j = std::max(j, 1);
    while (j > 1 && ax > std::pow(r, -j + 1)) --j;
    while (ax <= std::pow(r, -j)) ++j;
    return j;
  };

  const auto x = symmetrized.atoms();
  const auto m = symmetrized.masses();
  std::vector<double> p;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (same_atom(x[i], 0.0)) continue;
    const int j = annulus_index(std::abs(x[i]));
    if (static_cast<std::size_t>(j) >= p.size()) p.resize(static_cast<std::size_t>(j) + 1, 0.0);
    p[static_cast<std::size_t>(j)] += m[i];
  }

  long double beta = 0.0L;
  for (std::size_t j = 0; j < p.size(); ++j) {
    Annulus an;
    an.j = static_cast<int>(j);
    an.lower = j == 0 ? 1.0 : std::pow(r, -static_cast<double>(j));
    an.upper = j == 0 ? std::numeric_limits<double>::infinity() : std::pow(r, -static_cast<double>(j) + 1.0);
    an.p = p[j];
    an.beta = p[j] * std::pow(r, -2.0 * static_cast<double>(j));
    beta += an.beta;
    out.annuli.push_back(an);
  }
  out.beta = static_cast<double>(beta);
  if (out.beta > 0.0) {
    for (auto& an : out.annuli) an.mu = an.beta / out.beta;
  }
  const double slack = 1.0 - kCertificateSlack;
  out.certified = out.beta >= slack * out.m1 / (r * r) && out.beta >= slack * 0.5 * out.m1;
  return out;
}

}  // namespace lofo
