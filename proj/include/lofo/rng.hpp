#pragma once

// Portable seeded variates. The standard <random> distributions are
// implementation-defined, so the draws used by Monte-Carlo paths are spelled
// out here to keep results identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lofo {

using Engine = std::mt19937_64;

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on the open interval (0, 1).
inline double uniform_open(Engine& rng) {
  double u;
  do {
    u = uniform01(rng);
  } while (u == 0.0);
  return u;
}

/// Standard normal via Box-Muller (one variate per call, no caching).
inline double standard_normal(Engine& rng) {
  const double u1 = uniform_open(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Symmetric alpha-stable draw with characteristic function exp(-scale |t|^alpha),
/// Chambers-Mallows-Stuck construction.
inline double symmetric_stable(Engine& rng, double alpha, double scale) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double v = half_pi * (2.0 * uniform_open(rng) - 1.0);
  const double w = -std::log(uniform_open(rng));
  const double factor = std::pow(scale, 1.0 / alpha);
  if (alpha == 1.0) return factor * std::tan(v);
  const double x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
  return factor * x;
}

}  // namespace lofo
