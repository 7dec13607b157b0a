#include "lofo/analytic_dist.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lofo/errors.hpp"

namespace lofo {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kProbeTolerance = 1e-12;

}  // namespace

AnalyticDist AnalyticDist::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw PreconditionError("Gaussian scale must be positive");
  }
  return AnalyticDist(Gaussian{sigma});
}

AnalyticDist AnalyticDist::stable(double alpha, double scale) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw PreconditionError("stable index must lie in (0, 2]");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw PreconditionError("stable scale must be positive");
  return AnalyticDist(SymmetricStable{alpha, scale});
}

AnalyticDist AnalyticDist::user(std::function<std::complex<double>(double)> cf,
                                std::function<double(Engine&)> sampler, std::string label) {
  if (!cf) throw PreconditionError("user law needs a characteristic function");
  if (std::abs(cf(0.0) - std::complex<double>(1.0, 0.0)) > kProbeTolerance) {
    throw PreconditionError("characteristic function must equal 1 at t = 0");
  }
  for (int i = -200; i <= 200; ++i) {
    const double t = 0.25 * i;
    if (std::abs(cf(t)) > 1.0 + kProbeTolerance) {
      throw PreconditionError("characteristic function exceeds 1 in modulus at t = " + std::to_string(t));
    }
  }
  return AnalyticDist(UserCf{std::move(cf), std::move(sampler), std::move(label)});
}

std::complex<double> AnalyticDist::cf(double t) const {
  return std::visit(
      overloaded{
          [t](const Gaussian& g) { return std::complex<double>(std::exp(-0.5 * g.sigma * g.sigma * t * t), 0.0); },
          [t](const SymmetricStable& s) {
            return std::complex<double>(std::exp(-s.scale * std::pow(std::abs(t), s.alpha)), 0.0);
          },
          [t](const UserCf& u) { return u.cf(t); },
      },
      kind_);
}

double AnalyticDist::sample(Engine& rng) const {
  return std::visit(overloaded{
                        [&rng](const Gaussian& g) { return g.sigma * standard_normal(rng); },
                        [&rng](const SymmetricStable& s) { return symmetric_stable(rng, s.alpha, s.scale); },
                        [&rng](const UserCf& u) {
                          if (!u.sampler) throw PreconditionError("user law has no sampler");
                          return u.sampler(rng);
                        },
                    },
                    kind_);
}

bool AnalyticDist::is_symmetric() const {
  if (!std::holds_alternative<UserCf>(kind_)) return true;
  for (int i = 1; i <= 200; ++i) {
    if (std::abs(cf(0.25 * i).imag()) > 1e-10) return false;
  }
  return true;
}

std::string AnalyticDist::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&out](const Gaussian& g) { out << "gaussian(sigma=" << g.sigma << ")"; },
                 [&out](const SymmetricStable& s) {
                   out << "stable(alpha=" << s.alpha << ", scale=" << s.scale << ")";
                 },
                 [&out](const UserCf& u) { out << "user_cf(" << u.label << ")"; },
             },
             kind_);
  return out.str();
}

AnalyticDist symmetrize(const AnalyticDist& law) {
  return std::visit(
      overloaded{
          [](const Gaussian& g) { return AnalyticDist::gaussian(g.sigma * std::numbers::sqrt2); },
          [](const SymmetricStable& s) { return AnalyticDist::stable(s.alpha, 2.0 * s.scale); },
          [](const UserCf& u) {
            auto cf = u.cf;
            auto sampler = u.sampler;
            std::function<double(Engine&)> paired;
            if (sampler) paired = [sampler](Engine& rng) {
              const double x1 = sampler(rng);
              return x1 - sampler(rng);
            };
            return AnalyticDist::user([cf](double t) { return std::complex<double>(std::norm(cf(t)), 0.0); },
                                      std::move(paired), "symmetrized " + u.label);
          },
      },
      law.kind());
}

}  // namespace lofo
