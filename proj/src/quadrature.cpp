#include "pirg/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pirg/errors.hpp"

namespace pirg::quadrature {
namespace {

// Nodes and weights of the 8-point rule on [-1, 1]; symmetric pairs.
constexpr std::array<double, 4> kNodes = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kWeights = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

bool converged(double prev, double next, double rel_tol) {
  if (prev == next) return true;
  return std::abs(next - prev) <= rel_tol * std::abs(next);
}

double fixed_2d(const std::function<double(double, double)>& f, double x0,
                double x1, double y0, double y1, std::size_t subdivisions) {
  const double hx = (x1 - x0) / static_cast<double>(subdivisions);
  const double hy = (y1 - y0) / static_cast<double>(subdivisions);
  double total = 0.0;
  for (std::size_t a = 0; a < subdivisions; ++a) {
    const double cx = x0 + (static_cast<double>(a) + 0.5) * hx;
    for (std::size_t b = 0; b < subdivisions; ++b) {
      const double cy = y0 + (static_cast<double>(b) + 0.5) * hy;
      double cell = 0.0;
      for (std::size_t p = 0; p < 8; ++p) {
        const double xp = (p < 4 ? -1.0 : 1.0) * kNodes[p % 4];
        const double wp = kWeights[p % 4];
        for (std::size_t q = 0; q < 8; ++q) {
          const double yq = (q < 4 ? -1.0 : 1.0) * kNodes[q % 4];
          cell += wp * kWeights[q % 4] * f(cx + 0.5 * hx * xp, cy + 0.5 * hy * yq);
        }
      }
      total += cell * 0.25 * hx * hy;
    }
  }
  return total;
}

}  // namespace

double gauss_legendre_fixed(const std::function<double(double)>& f, double lo,
                            double hi, std::size_t subdivisions) {
  const double h = (hi - lo) / static_cast<double>(subdivisions);
  double total = 0.0;
  for (std::size_t s = 0; s < subdivisions; ++s) {
    const double mid = lo + (static_cast<double>(s) + 0.5) * h;
    double part = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double dx = 0.5 * h * kNodes[k];
      part += kWeights[k] * (f(mid - dx) + f(mid + dx));
    }
    total += 0.5 * h * part;
  }
  return total;
}

double gauss_legendre(const std::function<double(double)>& f, double lo,
                      double hi, const Options& opts) {
  if (lo == hi) return 0.0;
  double prev = gauss_legendre_fixed(f, lo, hi, 1);
  for (std::size_t s = 2; s <= opts.max_subdivisions; s *= 2) {
    const double next = gauss_legendre_fixed(f, lo, hi, s);
    if (converged(prev, next, opts.rel_tol)) return next;
    prev = next;
  }
  throw NumericalError("Gauss-Legendre quadrature did not reach relative tolerance " +
                       std::to_string(opts.rel_tol) + " within " +
                       std::to_string(opts.max_subdivisions) + " subdivisions");
}

double gauss_legendre_2d(const std::function<double(double, double)>& f,
                         double x0, double x1, double y0, double y1,
                         const Options& opts) {
  if (x0 == x1 || y0 == y1) return 0.0;
  double prev = fixed_2d(f, x0, x1, y0, y1, 1);
  for (std::size_t s = 2; s <= opts.max_subdivisions; s *= 2) {
    const double next = fixed_2d(f, x0, x1, y0, y1, s);
    if (converged(prev, next, opts.rel_tol)) return next;
    prev = next;
  }
  throw NumericalError("2-D Gauss-Legendre quadrature did not converge");
}

}  // namespace pirg::quadrature
