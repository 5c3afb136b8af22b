#include "pirg/poisson.hpp"

#include <array>
#include <cmath>

namespace pirg {
namespace {

constexpr std::size_t kTableSize = 256;

const std::array<double, kTableSize>& log_factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    t[0] = 0.0;
    for (std::size_t k = 1; k < kTableSize; ++k) {
      t[k] = t[k - 1] + std::log(static_cast<double>(k));
    }
    return t;
  }();
  return table;
}

std::uint64_t inversion(Rng& rng, double lambda) {
  const double u = rng.uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  std::uint64_t k = 0;
  // The cap only triggers when rounding leaves cdf just below u near 1.
  while (u > cdf && k < 200) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::uint64_t ptrs(Rng& rng, double lambda) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::uint64_t>(kf);
    const double lhs = std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b);
    const double rhs = -lambda + kf * loglam - log_factorial(k);
    if (lhs <= rhs) return k;
  }
}

}  // namespace

double log_factorial(std::uint64_t k) noexcept {
  if (k < kTableSize) return log_factorial_table()[k];
  // Stirling series for log Gamma(x), x = k + 1 >= 257.
  const double x = static_cast<double>(k) + 1.0;
  const double x2 = x * x;
  return (x - 0.5) * std::log(x) - x + 0.91893853320467274178 +
         (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / (1260.0 * x2)) / x2) / x;
}

std::uint64_t poisson(Rng& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda < 10.0) return inversion(rng, lambda);
  return ptrs(rng, lambda);
}

}  // namespace pirg
