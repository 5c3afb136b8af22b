#pragma once

#include <vector>

namespace pirg {

// Real polynomial with coefficients stored lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  // Degree after trimming trailing zeros; the zero polynomial has degree 0.
  int degree() const noexcept;
  bool is_zero() const noexcept;

  double operator()(double x) const noexcept;
  double antiderivative(double x) const noexcept;
  double integrate(double lo, double hi) const noexcept;
  Polynomial derivative() const;

  // Real roots of p' strictly inside (lo, hi). Only defined for degree <= 3
  // (derivative of degree <= 2); returns false when the degree is higher.
  bool critical_points(double lo, double hi, std::vector<double>& out) const;

  // Minimum over the closed interval [lo, hi]. `exact` is set when the
  // minimum was located analytically (degree <= 3); otherwise it is a dense
  // sample minimum.
  double minimum(double lo, double hi, bool& exact) const;

 private:
  std::vector<double> coeffs_;
};

}  // namespace pirg
