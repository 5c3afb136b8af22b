#pragma once

#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "pirg/polynomial.hpp"

namespace pirg {

// Symmetric nonnegative kernels W(x, y) on the unit square.
//
// Interval conventions: cells, blocks and polynomial pieces are half-open on
// the left, (b_k, b_{k+1}], with x = 0 assigned to the first one. This is the
// left-continuous convention; it is applied on both axes.

enum class KernelKind { Constant, Product, Block, Grid };

std::string_view to_string(KernelKind kind) noexcept;

// Whether a computed quantity is exact (closed form) or approximated
// numerically.
enum class Method { Exact, Approximate };

std::string_view to_string(Method method) noexcept;

struct ConstantKernel {
  double a = 0.0;
};

// W(x, y) = f(x) f(y), f piecewise polynomial on `breakpoints`.
struct ProductKernel {
  std::vector<double> breakpoints;
  std::vector<Polynomial> pieces;
  double f_l1 = 0.0;  // integral of f over [0, 1]
};

// Piecewise-constant kernel; `matrix` is k x k row-major with
// k = breakpoints.size() - 1.
struct StepKernel {
  std::vector<double> breakpoints;
  std::vector<double> matrix;

  std::size_t blocks() const noexcept { return breakpoints.size() - 1; }
  double value(std::size_t k, std::size_t l) const noexcept {
    return matrix[k * blocks() + l];
  }
};

struct BlockKernel : StepKernel {};

// Uniform m-grid of cell averages; breakpoints are i / m.
struct GridKernel : StepKernel {
  std::size_t m = 0;
};

class Kernel {
 public:
  using Variant = std::variant<ConstantKernel, ProductKernel, BlockKernel, GridKernel>;

  static Kernel constant(double a);
  // `coeffs[p]` holds the coefficients (lowest degree first) of f on the
  // p-th piece (breakpoints[p], breakpoints[p+1]].
  static Kernel product(std::vector<double> breakpoints,
                        std::vector<std::vector<double>> coeffs);
  static Kernel block(std::vector<double> breakpoints,
                      std::vector<std::vector<double>> matrix);
  static Kernel grid(std::size_t m, std::vector<std::vector<double>> matrix);

  KernelKind kind() const noexcept;
  const Variant& variant() const noexcept { return data_; }

  double eval(double x, double y) const;

  // H(x) = int_0^1 W(x, y) dy.
  double marginal(double x) const;

  // H_n(x) = n * int_{S_i} H(u) du for the cell S_i = ((i-1)/n, i/n] that
  // contains x; x must lie in (0, 1].
  double marginal_discretized(std::size_t n, double x) const;

  // int_lo^hi H(u) du.
  double marginal_integral(double lo, double hi) const;

 private:
  explicit Kernel(Variant data) : data_(std::move(data)) {}
  Variant data_;
};

struct Nu0 {
  double value = 0.0;
  Method method = Method::Exact;
};

// Essential infimum of H.
Nu0 nu0(const Kernel& w);

// (int int W^q)^{1/q}, q > 1.
double lq_norm(const Kernel& w, double q);

struct Irreducibility {
  bool irreducible = false;
  Method method = Method::Exact;
};

Irreducibility is_irreducible(const Kernel& w);

// Index of the interval (b_k, b_{k+1}] containing x, with x = b_0 mapped to 0.
std::size_t locate(const std::vector<double>& breakpoints, double x) noexcept;

// Cell index i in [1, n] with (i-1)/n < x <= i/n, x = 0 mapped to 1.
std::size_t cell_of(std::size_t n, double x) noexcept;

}  // namespace pirg
