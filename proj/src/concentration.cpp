#include "lofo/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "lofo/characteristic.hpp"
#include "lofo/errors.hpp"
#include "lofo/quadrature.hpp"
#include "lofo/rng.hpp"

namespace lofo {
namespace {

constexpr double kWindowSlack = 1e-11;
constexpr std::size_t kMinMonteCarloSamples = 10'000;

void require_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw PreconditionError("lambda must be finite and >= 0");
}

// Two-point law with equal weights w on s coordinates:
// S = w (s u + K (v - u)), K ~ Binomial(s, p).
FiniteDist binomial_sum(double u, double v, double p, double w, std::size_t s) {
  const long double ratio = static_cast<long double>(p) / (1.0L - p);
  const std::size_t mode = static_cast<std::size_t>(std::floor((static_cast<double>(s) + 1.0) * p));
  const std::size_t top = std::min(mode, s);
  std::vector<long double> pmf(s + 1, 0.0L);
  pmf[top] = 1.0L;
  for (std::size_t k = top; k < s; ++k) {
    pmf[k + 1] = pmf[k] * static_cast<long double>(s - k) / static_cast<long double>(k + 1) * ratio;
  }
  for (std::size_t k = top; k > 0; --k) {
    pmf[k - 1] = pmf[k] * static_cast<long double>(k) / static_cast<long double>(s - k + 1) / ratio;
  }
  long double total = 0.0L;
  for (long double q : pmf) total += q;

  std::vector<double> atoms(s + 1);
  std::vector<double> masses(s + 1);
  const double base = w * static_cast<double>(s) * u;
  const double step = w * (v - u);
  for (std::size_t k = 0; k <= s; ++k) {
    atoms[k] = base + static_cast<double>(k) * step;
    masses[k] = static_cast<double>(pmf[k] / total);
  }
  return FiniteDist::normalized(std::move(atoms), std::move(masses));
}

// Convolution of `current` with the law of w X by a streaming k-way merge of
// the shifted copies current + w x_i. Aborts when the coalesced output would
// exceed the budget and reports the size the step attains.
FiniteDist convolve_scaled(const FiniteDist& current, const FiniteDist& law, double w, std::size_t budget) {
  const auto ca = current.atoms();
  const auto cm = current.masses();
  const auto la = law.atoms();
  const auto lm = law.masses();
  const std::size_t k = la.size();

  struct Head {
    double value;
    std::size_t list;
    std::size_t pos;
    bool operator>(const Head& o) const {
      return value > o.value || (value == o.value && list > o.list);
    }
  };

  auto run = [&](bool store, std::vector<double>& atoms, std::vector<double>& masses) -> std::size_t {
    std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
    for (std::size_t i = 0; i < k; ++i) heap.push({ca[0] + w * la[i], i, 0});
    std::size_t count = 0;
    double anchor = 0.0;
    while (!heap.empty()) {
      const Head h = heap.top();
      heap.pop();
      const double mass = cm[h.pos] * lm[h.list];
      if (count > 0 && same_atom(anchor, h.value)) {
        if (store) masses.back() += mass;
      } else {
        anchor = h.value;
        ++count;
        if (store) {
          if (count > budget) return count;
          atoms.push_back(h.value);
          masses.push_back(mass);
        }
      }
      if (h.pos + 1 < ca.size()) heap.push({ca[h.pos + 1] + w * la[h.list], h.list, h.pos + 1});
    }
    return count;
  };

  std::vector<double> atoms;
  std::vector<double> masses;
  atoms.reserve(std::min(budget, ca.size() * k) + 1);
  masses.reserve(atoms.capacity());
  const std::size_t stored = run(true, atoms, masses);
  if (stored > budget) {
    std::vector<double> unused_a;
    std::vector<double> unused_m;
    throw CapacityError(run(false, unused_a, unused_m), budget);
  }
  return FiniteDist::normalized(std::move(atoms), std::move(masses));
}

std::vector<double> sorted_draws_finite(const FiniteDist& law, const WeightVector& a, std::size_t n,
                                        std::uint64_t seed) {
  const auto atoms = law.atoms();
  const auto masses = law.masses();
  std::vector<double> cumulative(masses.size());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    acc += masses[i];
    cumulative[i] = static_cast<double>(acc);
  }
  cumulative.back() = 1.0;
  Engine rng(seed);
  std::vector<double> out(n);
  for (double& x : out) {
    double s = 0.0;
    for (double ak : a.coords()) {
      const double u = uniform01(rng);
      const auto idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                                cumulative.begin());
      s += ak * atoms[std::min(idx, atoms.size() - 1)];
    }
    x = s;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> sorted_draws_analytic(const AnalyticDist& law, const WeightVector& a, std::size_t n,
                                          std::uint64_t seed) {
  Engine rng(seed);
  std::vector<double> out(n);
  for (double& x : out) {
    double s = 0.0;
    for (double ak : a.coords()) s += ak * law.sample(rng);
    x = s;
  }
  std::sort(out.begin(), out.end());
  return out;
}

QEstimate empirical_q(const std::vector<double>& sorted, double lambda, std::uint64_t seed) {
  const std::vector<double> masses(sorted.size(), 1.0 / static_cast<double>(sorted.size()));
  const Window w = best_window(sorted, masses, lambda);
  QEstimate q;
  q.value = w.mass;
  q.window_left = w.left;
  q.method = Method::monte_carlo;
  q.error_radius = dkw_window_radius(sorted.size());
  q.lambda = lambda;
  q.samples = sorted.size();
  q.seed = seed;
  return q;
}

template <class Law>
double esseen_impl(const Law& law, const WeightVector& a, double lambda, double tol, std::size_t panels) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw PreconditionError("lambda must be positive");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const double upper = 1.0 / lambda;
  QuadratureOptions opt;
  opt.tol = tol / lambda;
  opt.max_depth = 40;
  opt.panels = panels;
  const auto r = adaptive_simpson([&](double t) { return std::abs(weighted_cf(law, a, t)); }, 0.0, upper, opt);
  const double value = lambda * r.value;
  if (!r.converged) throw QuadratureError("Esseen integral did not converge", value);
  return value;
}

}  // namespace

Window best_window(std::span<const double> sorted_points, std::span<const double> masses, double lambda) {
  require_lambda(lambda);
  const std::size_t n = sorted_points.size();
  if (n == 0 || masses.size() != n) throw PreconditionError("window scan needs matching, nonempty inputs");
  std::vector<long double> prefix(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + masses[i];

  Window best{sorted_points[0], -1.0};
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = sorted_points[i];
    const double right = left + lambda;
    j = std::max(j, i);
    while (j < n) {
      const double x = sorted_points[j];
      const double scale = std::max({std::abs(left), std::abs(x), lambda});
      if (x <= right + kWindowSlack * scale) {
        ++j;
      } else {
        break;
      }
    }
    const double mass = static_cast<double>(prefix[j] - prefix[i]);
    if (mass > best.mass) best = {left, mass};
  }
  best.mass = std::clamp(best.mass, 0.0, 1.0);
  return best;
}

QEstimate q_exact(const FiniteDist& law, double lambda) {
  require_lambda(lambda);
  const Window w = best_window(law.atoms(), law.masses(), lambda);
  QEstimate q;
  q.value = w.mass;
  q.window_left = w.left;
  q.method = Method::exact;
  q.lambda = lambda;
  return q;
}

QEstimate q_closed_form_gaussian(double sigma_total, double lambda) {
  if (!(sigma_total > 0.0) || !std::isfinite(sigma_total)) {
    throw PreconditionError("Gaussian standard deviation must be positive");
  }
  require_lambda(lambda);
  QEstimate q;
  // 2 Phi(z) - 1 = erf(z / sqrt 2) with z = lambda / (2 sigma).
  q.value = std::isinf(lambda) ? 1.0 : std::erf(lambda / (2.0 * sigma_total * std::numbers::sqrt2));
  q.method = Method::closed_form;
  q.lambda = lambda;
  q.window_left = -0.5 * lambda;
  return q;
}

FiniteDist weighted_sum_dist(const FiniteDist& law, const WeightVector& a, std::size_t budget) {
  if (budget == 0) throw PreconditionError("support budget must be positive");
  std::vector<double> w;
  for (double ak : a.coords()) {
    if (ak != 0.0) w.push_back(ak);
  }
  std::stable_sort(w.begin(), w.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });

  if (law.size() == 1) {
    long double s = 0.0L;
    for (double wk : w) s += static_cast<long double>(wk) * law.atoms()[0];
    return FiniteDist::point_mass(static_cast<double>(s));
  }
  const bool all_equal = std::all_of(w.begin(), w.end(), [&](double x) { return x == w.front(); });
  if (law.size() == 2 && all_equal) {
    if (w.size() + 1 > budget) throw CapacityError(w.size() + 1, budget);
    return binomial_sum(law.atoms()[0], law.atoms()[1], law.masses()[1], w.front(), w.size());
  }
  FiniteDist current = FiniteDist::point_mass(0.0);
  for (double wk : w) current = convolve_scaled(current, law, wk, budget);
  return current;
}

double dkw_window_radius(std::size_t n_samples, double confidence) {
  // sup |F_n - F| <= eps with probability >= 1 - 2 exp(-2 n eps^2); a window
  // mass is a difference of two CDF values.
  const double delta = 1.0 - confidence;
  const double eps = std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n_samples)));
  return 2.0 * eps;
}

QEstimate q_monte_carlo(const FiniteDist& law, const WeightVector& a, double lambda, std::size_t n_samples,
                        std::uint64_t seed) {
  require_lambda(lambda);
  if (n_samples < kMinMonteCarloSamples) throw PreconditionError("Monte-Carlo Q needs at least 10^4 samples");
  return empirical_q(sorted_draws_finite(law, a, n_samples, seed), lambda, seed);
}

QEstimate q_monte_carlo(const AnalyticDist& law, const WeightVector& a, double lambda, std::size_t n_samples,
                        std::uint64_t seed) {
  require_lambda(lambda);
  if (n_samples < kMinMonteCarloSamples) throw PreconditionError("Monte-Carlo Q needs at least 10^4 samples");
  return empirical_q(sorted_draws_analytic(law, a, n_samples, seed), lambda, seed);
}

double esseen_integral(const FiniteDist& law, const WeightVector& a, double lambda, double tol) {
  // |cf| oscillates on the scale 2 pi / (support width of S_a); start with
  // enough panels that no oscillation hides between initial nodes.
  long double l1 = 0.0L;
  for (double ak : a.coords()) l1 += std::abs(ak);
  const double width = (law.atoms().back() - law.atoms().front()) * static_cast<double>(l1);
  const double upper = lambda > 0.0 ? 1.0 / lambda : 0.0;
  const double wanted = std::ceil(upper * width / (0.25 * std::numbers::pi));
  const auto panels = static_cast<std::size_t>(std::clamp(wanted, 16.0, double(1 << 20)));
  return esseen_impl(law, a, lambda, tol, panels);
}

double esseen_integral(const AnalyticDist& law, const WeightVector& a, double lambda, double tol) {
  return esseen_impl(law, a, lambda, tol, 16);
}

RegularityReport q_regularity_check(const FiniteDist& law, double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw PreconditionError("lambda and mu must be positive");
  RegularityReport r;
  r.lambda = lambda;
  r.mu = mu;
  r.q_lambda = q_exact(law, lambda).value;
  r.q_mu = q_exact(law, mu).value;
  r.bound = (1.0 + std::floor(mu / lambda)) * r.q_lambda;
  r.holds = r.q_mu <= r.bound + 1e-15;
  return r;
}

}  // namespace lofo
