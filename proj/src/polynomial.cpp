#include "pirg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pirg {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

int Polynomial::degree() const noexcept {
  int d = static_cast<int>(coeffs_.size()) - 1;
  while (d > 0 && coeffs_[static_cast<std::size_t>(d)] == 0.0) --d;
  return std::max(d, 0);
}

bool Polynomial::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::antiderivative(double x) const noexcept {
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    acc = acc * x + coeffs_[k] / static_cast<double>(k + 1);
  }
  return acc * x;
}

double Polynomial::integrate(double lo, double hi) const noexcept {
  if (degree() == 0) return coeffs_[0] * (hi - lo);
  return antiderivative(hi) - antiderivative(lo);
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  }
  return Polynomial(std::move(d));
}

bool Polynomial::critical_points(double lo, double hi, std::vector<double>& out) const {
  const int deg = degree();
  if (deg > 3) return false;
  auto inside = [&](double r) {
    if (r > lo && r < hi) out.push_back(r);
  };
  if (deg <= 1) return true;
  const double b = coeffs_[1];
  const double c2 = 2.0 * coeffs_[2];
  if (deg == 2) {
    inside(-b / c2);
    return true;
  }
  // p'(x) = b + c2 x + c3 x^2
  const double c3 = 3.0 * coeffs_[3];
  const double disc = c2 * c2 - 4.0 * c3 * b;
  if (disc < 0.0) return true;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (c2 + std::copysign(sq, c2));
  if (q != 0.0) {
    inside(q / c3);
    inside(b / q);
  } else {
    inside(0.0);
  }
  return true;
}

double Polynomial::minimum(double lo, double hi, bool& exact) const {
  double best = std::min((*this)(lo), (*this)(hi));
  std::vector<double> crit;
  if (critical_points(lo, hi, crit)) {
    exact = true;
    for (double r : crit) best = std::min(best, (*this)(r));
    return best;
  }
  exact = false;
  constexpr int kSamples = 4096;
  for (int s = 1; s < kSamples; ++s) {
    const double x = lo + (hi - lo) * static_cast<double>(s) / kSamples;
    best = std::min(best, (*this)(x));
  }
  return best;
}

}  // namespace pirg
