#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>

#include "lofo/rng.hpp"

namespace lofo {

/// Centered normal law with standard deviation sigma.
struct Gaussian {
  double sigma;
};

/// Symmetric stable law with characteristic function exp(-scale |t|^alpha).
struct SymmetricStable {
  double alpha;
  double scale;
};

/// A law known only through its characteristic function and a sampler.
struct UserCf {
  std::function<std::complex<double>(double)> cf;
  std::function<double(Engine&)> sampler;
  std::string label;
};

/// Distribution given in closed form. Used on the quadrature and Monte-Carlo
/// paths where no finite support exists.
class AnalyticDist {
 public:
  using Kind = std::variant<Gaussian, SymmetricStable, UserCf>;

  static AnalyticDist gaussian(double sigma);
  static AnalyticDist stable(double alpha, double scale);
  /// Checks cf(0) == 1 and |cf| <= 1 on a probe grid.
  static AnalyticDist user(std::function<std::complex<double>(double)> cf,
                           std::function<double(Engine&)> sampler, std::string label = "user");

  const Kind& kind() const noexcept { return kind_; }
  bool is_gaussian() const noexcept { return std::holds_alternative<Gaussian>(kind_); }
  bool is_stable() const noexcept { return std::holds_alternative<SymmetricStable>(kind_); }

  std::complex<double> cf(double t) const;
  double sample(Engine& rng) const;
  /// Real characteristic function on the probe grid.
  bool is_symmetric() const;
  std::string describe() const;

 private:
  explicit AnalyticDist(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Law of X1 - X2: Gaussian(sigma) -> Gaussian(sigma*sqrt 2),
/// stable(alpha, c) -> stable(alpha, 2c), user cf -> |cf|^2 with paired draws.
AnalyticDist symmetrize(const AnalyticDist& law);

}  // namespace lofo
