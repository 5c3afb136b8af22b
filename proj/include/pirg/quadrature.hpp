#pragma once

#include <cstddef>
#include <functional>

namespace pirg::quadrature {

// Composite 8-point Gauss-Legendre rule. The interval is split into 1, 2, 4,
// ... equal subintervals until two successive estimates agree to
// `rel_tol` (relative), or both are exactly zero. Throws NumericalError if
// `max_subdivisions` is reached without convergence.
struct Options {
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = 1024;
};

double gauss_legendre(const std::function<double(double)>& f, double lo,
                      double hi, const Options& opts = {});

// Tensor-product version over [x0,x1] x [y0,y1]; subdivisions refine both
// axes together.
double gauss_legendre_2d(const std::function<double(double, double)>& f,
                         double x0, double x1, double y0, double y1,
                         const Options& opts = {});

// Single application of the composite rule with a fixed subdivision count.
double gauss_legendre_fixed(const std::function<double(double)>& f, double lo,
                            double hi, std::size_t subdivisions);

}  // namespace pirg::quadrature
