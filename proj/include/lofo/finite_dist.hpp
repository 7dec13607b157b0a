#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lofo {

/// Two atoms closer than this are the same point: 1e-9 relative, or 1e-12
/// absolute near zero. Floating images of one exact rational support point
/// must not split its mass.
bool same_atom(double x, double y) noexcept;

/// A finite discrete probability law. Atoms are strictly increasing and every
/// mass is positive; masses sum to one.
class FiniteDist {
 public:
  /// Validates user-supplied data: masses must be finite and nonnegative (zeros
  /// are dropped) and must sum to 1 within 1e-12. Atoms are sorted and
  /// coalesced.
  FiniteDist(std::vector<double> atoms, std::vector<double> masses);

  /// Builds a law from arithmetic output (convolutions, differences): sorts,
  /// coalesces, drops non-positive masses and divides by the total.
  static FiniteDist normalized(std::vector<double> atoms, std::vector<double> masses);

  static FiniteDist point_mass(double x);
  /// P{X = 1} = p, P{X = 0} = 1 - p.
  static FiniteDist bernoulli(double p);
  /// Uniform law on the given points.
  static FiniteDist uniform(std::vector<double> points);

  std::span<const double> atoms() const noexcept { return atoms_; }
  std::span<const double> masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Mass at x (with the coalescing tolerance); 0 when x is not an atom.
  double mass_at(double x) const;
  double max_mass() const;
  double mean() const;
  double variance() const;

  /// mass(x) == mass(-x) within `tol` for every atom.
  bool is_symmetric(double tol = 1e-12) const;

  friend bool operator==(const FiniteDist&, const FiniteDist&) = default;

 private:
  struct Trusted {};
  FiniteDist(Trusted, std::vector<double> atoms, std::vector<double> masses);

  std::vector<double> atoms_;
  std::vector<double> masses_;
};

/// Law of X1 - X2 for independent copies of X. The result is symmetric
/// exactly: the negative half is the mirror image of the positive half.
FiniteDist symmetrize(const FiniteDist& law);

/// Sorts (atom, mass) pairs by atom and merges runs of same_atom() points into
/// the first point of the run. Used by every constructor.
void sort_and_coalesce(std::vector<double>& atoms, std::vector<double>& masses);

}  // namespace lofo
