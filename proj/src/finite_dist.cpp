#include "lofo/finite_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lofo/errors.hpp"

namespace lofo {
namespace {

constexpr double kRelativeMerge = 1e-9;
constexpr double kAbsoluteMerge = 1e-12;
constexpr double kMassSumTolerance = 1e-12;

double total(std::span<const double> v) {
  // Pairwise-free but ordered: the input is already sorted by atom, so the
  // summation order is deterministic.
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s);
}

}  // namespace

bool same_atom(double x, double y) noexcept {
  const double gap = std::abs(x - y);
  return gap <= std::max(kRelativeMerge * std::max(std::abs(x), std::abs(y)), kAbsoluteMerge);
}

void sort_and_coalesce(std::vector<double>& atoms, std::vector<double>& masses) {
  if (atoms.size() != masses.size()) {
    throw PreconditionError("atoms and masses differ in length");
  }
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return atoms[i] < atoms[j]; });

  std::vector<double> out_atoms;
  std::vector<double> out_masses;
  out_atoms.reserve(atoms.size());
  out_masses.reserve(atoms.size());
  for (std::size_t idx : order) {
    const double x = atoms[idx];
    const double m = masses[idx];
    if (!out_atoms.empty() && same_atom(out_atoms.back(), x)) {
      out_masses.back() += m;
    } else {
      out_atoms.push_back(x);
      out_masses.push_back(m);
    }
  }
  atoms = std::move(out_atoms);
  masses = std::move(out_masses);
}

FiniteDist::FiniteDist(std::vector<double> atoms, std::vector<double> masses) {
  if (atoms.empty()) throw PreconditionError("a finite law needs at least one atom");
  if (atoms.size() != masses.size()) {
    throw PreconditionError("atoms and masses differ in length");
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) throw PreconditionError("non-finite atom");
    if (!std::isfinite(masses[i]) || masses[i] < 0.0) {
      throw PreconditionError("masses must be finite and nonnegative");
    }
  }
  std::vector<double> kept_atoms;
  std::vector<double> kept_masses;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (masses[i] > 0.0) {
      kept_atoms.push_back(atoms[i]);
      kept_masses.push_back(masses[i]);
    }
  }
  sort_and_coalesce(kept_atoms, kept_masses);
  const double sum = total(kept_masses);
  if (std::abs(sum - 1.0) > kMassSumTolerance) {
    throw PreconditionError("masses sum to " + std::to_string(sum) + ", expected 1");
  }
  atoms_ = std::move(kept_atoms);
  masses_ = std::move(kept_masses);
}

FiniteDist::FiniteDist(Trusted, std::vector<double> atoms, std::vector<double> masses)
    : atoms_(std::move(atoms)), masses_(std::move(masses)) {}

FiniteDist FiniteDist::normalized(std::vector<double> atoms, std::vector<double> masses) {
  if (atoms.size() != masses.size()) {
    throw PreconditionError("atoms and masses differ in length");
  }
  std::vector<double> kept_atoms;
  std::vector<double> kept_masses;
  kept_atoms.reserve(atoms.size());
  kept_masses.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (masses[i] > 0.0 && std::isfinite(masses[i])) {
      kept_atoms.push_back(atoms[i]);
      kept_masses.push_back(masses[i]);
    }
  }
  if (kept_atoms.empty()) throw PreconditionError("no positive mass");
  sort_and_coalesce(kept_atoms, kept_masses);
  const double sum = total(kept_masses);
  for (double& m : kept_masses) m /= sum;
  return FiniteDist(Trusted{}, std::move(kept_atoms), std::move(kept_masses));
}

FiniteDist FiniteDist::point_mass(double x) { return FiniteDist({x}, {1.0}); }

FiniteDist FiniteDist::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return point_mass(0.0);
    if (p == 1.0) return point_mass(1.0);
    throw PreconditionError("Bernoulli parameter must lie in [0, 1]");
  }
  return FiniteDist(Trusted{}, {0.0, 1.0}, {1.0 - p, p});
}

FiniteDist FiniteDist::uniform(std::vector<double> points) {
  if (points.empty()) throw PreconditionError("uniform law needs at least one point");
  std::vector<double> masses(points.size(), 1.0 / static_cast<double>(points.size()));
  return normalized(std::move(points), std::move(masses));
}

double FiniteDist::mass_at(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
  for (auto cand : {it, it == atoms_.begin() ? it : std::prev(it)}) {
    if (cand != atoms_.end() && same_atom(*cand, x)) {
      return masses_[static_cast<std::size_t>(cand - atoms_.begin())];
    }
  }
  return 0.0;
}

double FiniteDist::max_mass() const { return *std::max_element(masses_.begin(), masses_.end()); }

double FiniteDist::mean() const {
  long double s = 0.0L;
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += static_cast<long double>(atoms_[i]) * masses_[i];
  return static_cast<double>(s);
}

double FiniteDist::variance() const {
  const double mu = mean();
  long double s = 0.0L;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const long double d = atoms_[i] - mu;
    s += d * d * masses_[i];
  }
  return static_cast<double>(s);
}

bool FiniteDist::is_symmetric(double tol) const {
  const std::size_t n = atoms_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    if (!same_atom(atoms_[i], -atoms_[j])) return false;
    if (std::abs(masses_[i] - masses_[j]) > tol) return false;
  }
  return true;
}

FiniteDist symmetrize(const FiniteDist& law) {
  const auto x = law.atoms();
  const auto m = law.masses();
  const std::size_t n = x.size();

  long double zero_mass = 0.0L;
  for (double mi : m) zero_mass += static_cast<long double>(mi) * mi;

  std::vector<double> diffs;
  std::vector<double> weights;
  diffs.reserve(n * (n - 1) / 2);
  weights.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      diffs.push_back(x[i] - x[j]);
      weights.push_back(m[i] * m[j]);
    }
  }
  sort_and_coalesce(diffs, weights);

  // Differences that coalesce with zero join the central atom (both signs).
  std::size_t first_positive = 0;
  while (first_positive < diffs.size() && same_atom(diffs[first_positive], 0.0)) {
    zero_mass += 2.0L * weights[first_positive];
    ++first_positive;
  }

  const std::size_t k = diffs.size() - first_positive;
  std::vector<double> atoms(2 * k + 1);
  std::vector<double> masses(2 * k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    const double d = diffs[first_positive + i];
    const double w = weights[first_positive + i];
    atoms[k + 1 + i] = d;
    masses[k + 1 + i] = w;
    atoms[k - 1 - i] = -d;
    masses[k - 1 - i] = w;
  }
  atoms[k] = 0.0;
  masses[k] = static_cast<double>(zero_mass);

  // Total is (sum m)^2, one up to rounding. normalized() divides every mass by
  // the same total, so mirrored masses stay bitwise equal.
  return FiniteDist::normalized(std::move(atoms), std::move(masses));
}

}  // namespace lofo
