#include "pirg/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pirg/errors.hpp"
#include "pirg/quadrature.hpp"

namespace pirg {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + " = " + std::to_string(x) +
                      " lies outside [0, 1]");
  }
}

void validate_breakpoints(const std::vector<double>& bps) {
  if (bps.size() < 2) throw ArgumentError("breakpoints: need at least two entries");
  if (bps.front() != 0.0 || bps.back() != 1.0) {
    throw ArgumentError("breakpoints: must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < bps.size(); ++k) {
    if (!(bps[k] > bps[k - 1])) {
      throw ArgumentError("breakpoints[" + std::to_string(k) +
                          "]: breakpoints must be strictly increasing");
    }
  }
}

std::vector<double> validate_square(const std::vector<std::vector<double>>& rows,
                                    std::size_t k) {
  if (rows.size() != k) {
    throw ArgumentError("matrix: expected " + std::to_string(k) + " rows, got " +
                        std::to_string(rows.size()));
  }
  std::vector<double> flat(k * k);
  for (std::size_t r = 0; r < k; ++r) {
    if (rows[r].size() != k) {
      throw ArgumentError("matrix[" + std::to_string(r) + "]: expected " +
                          std::to_string(k) + " columns");
    }
    for (std::size_t c = 0; c < k; ++c) {
      const double v = rows[r][c];
      if (!std::isfinite(v) || v < 0.0) {
        throw ArgumentError("matrix[" + std::to_string(r) + "][" + std::to_string(c) +
                            "]: entries must be finite and nonnegative");
      }
      flat[r * k + c] = v;
    }
  }
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = r + 1; c < k; ++c) {
      if (flat[r * k + c] != flat[c * k + r]) {
        throw ArgumentError("matrix[" + std::to_string(r) + "][" + std::to_string(c) +
                            "]: matrix must be symmetric");
      }
    }
  }
  return flat;
}

double overlap(double a0, double a1, double b0, double b1) noexcept {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

// int_lo^hi f for the piecewise polynomial of a product kernel.
double f_integral(const ProductKernel& p, double lo, double hi) {
  if (hi <= lo) return 0.0;
  double total = 0.0;
  for (std::size_t k = locate(p.breakpoints, lo); k < p.pieces.size(); ++k) {
    const double a = std::max(lo, p.breakpoints[k]);
    const double b = std::min(hi, p.breakpoints[k + 1]);
    if (b > a) total += p.pieces[k].integrate(a, b);
    if (p.breakpoints[k + 1] >= hi) break;
  }
  return total;
}

double f_value(const ProductKernel& p, double x) {
  return p.pieces[locate(p.breakpoints, x)](x);
}

double row_mass(const StepKernel& s, std::size_t k) {
  double acc = 0.0;
  for (std::size_t l = 0; l < s.blocks(); ++l) {
    acc += s.value(k, l) * (s.breakpoints[l + 1] - s.breakpoints[l]);
  }
  return acc;
}

double step_marginal_integral(const StepKernel& s, double lo, double hi) {
  if (hi <= lo) return 0.0;
  double total = 0.0;
  for (std::size_t k = locate(s.breakpoints, lo); k < s.blocks(); ++k) {
    const double len = overlap(lo, hi, s.breakpoints[k], s.breakpoints[k + 1]);
    if (len > 0.0) total += len * row_mass(s, k);
    if (s.breakpoints[k + 1] >= hi) break;
  }
  return total;
}

// Minimum over m-cells of H_m, refined m -> 2m until the relative change
// drops below 1e-9.
double refine_min_discretized(const Kernel& w) {
  constexpr double kRelTol = 1e-9;
  constexpr std::size_t kMaxCells = std::size_t{1} << 22;
  auto min_at = [&](std::size_t m) {
    double best = INFINITY;
    for (std::size_t i = 1; i <= m; ++i) {
      const double lo = static_cast<double>(i - 1) / static_cast<double>(m);
      const double hi = static_cast<double>(i) / static_cast<double>(m);
      best = std::min(best, static_cast<double>(m) * w.marginal_integral(lo, hi));
    }
    return best;
  };
  double prev = min_at(64);
  for (std::size_t m = 128; m <= kMaxCells; m *= 2) {
    const double next = min_at(m);
    if (std::abs(next - prev) <= kRelTol * std::abs(next)) return next;
    prev = next;
  }
  return prev;
}

}  // namespace

std::string_view to_string(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::Constant: return "constant";
    case KernelKind::Product: return "product";
    case KernelKind::Block: return "block";
    case KernelKind::Grid: return "grid";
  }
  return "unknown";
}

std::string_view to_string(Method method) noexcept {
  return method == Method::Exact ? "exact" : "approximate";
}

std::size_t locate(const std::vector<double>& breakpoints, double x) noexcept {
  // First breakpoint b_{k+1} >= x among b_1..b_K gives interval k.
  auto it = std::lower_bound(breakpoints.begin() + 1, breakpoints.end(), x);
  const auto k = static_cast<std::size_t>(it - (breakpoints.begin() + 1));
  return std::min(k, breakpoints.size() - 2);
}

std::size_t cell_of(std::size_t n, double x) noexcept {
  const double dn = static_cast<double>(n);
  auto i = static_cast<std::size_t>(std::ceil(x * dn));
  i = std::clamp<std::size_t>(i, 1, n);
  while (i > 1 && static_cast<double>(i - 1) / dn >= x) --i;
  while (i < n && static_cast<double>(i) / dn < x) ++i;
  return i;
}

Kernel Kernel::constant(double a) {
  if (!std::isfinite(a) || a < 0.0) {
    throw ArgumentError("a: constant kernel value must be finite and nonnegative");
  }
  return Kernel(ConstantKernel{a});
}

Kernel Kernel::product(std::vector<double> breakpoints,
                       std::vector<std::vector<double>> coeffs) {
  validate_breakpoints(breakpoints);
  if (coeffs.size() != breakpoints.size() - 1) {
    throw ArgumentError("coeffs: expected one coefficient list per piece (" +
                        std::to_string(breakpoints.size() - 1) + "), got " +
                        std::to_string(coeffs.size()));
  }
  ProductKernel p;
  p.breakpoints = std::move(breakpoints);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const std::string field = "coeffs[" + std::to_string(k) + "]";
    if (coeffs[k].empty()) throw ArgumentError(field + ": empty coefficient list");
    for (double c : coeffs[k]) {
      if (!std::isfinite(c)) throw ArgumentError(field + ": coefficients must be finite");
    }
    Polynomial poly(coeffs[k]);
    bool exact = false;
    const double lo = p.breakpoints[k];
    const double hi = p.breakpoints[k + 1];
    const double fmin = poly.minimum(lo, hi, exact);
    double scale = 0.0;
    for (double c : coeffs[k]) scale = std::max(scale, std::abs(c));
    if (fmin < -1e-12 * std::max(scale, 1.0)) {
      throw ArgumentError(field + ": f must be nonnegative on its piece (minimum " +
                          std::to_string(fmin) + ")");
    }
    p.pieces.push_back(std::move(poly));
  }
  for (std::size_t k = 0; k < p.pieces.size(); ++k) {
    p.f_l1 += p.pieces[k].integrate(p.breakpoints[k], p.breakpoints[k + 1]);
  }
  return Kernel(std::move(p));
}

Kernel Kernel::block(std::vector<double> breakpoints,
                     std::vector<std::vector<double>> matrix) {
  validate_breakpoints(breakpoints);
  BlockKernel b;
  b.matrix = validate_square(matrix, breakpoints.size() - 1);
  b.breakpoints = std::move(breakpoints);
  return Kernel(std::move(b));
}

Kernel Kernel::grid(std::size_t m, std::vector<std::vector<double>> matrix) {
  if (m == 0) throw ArgumentError("m: grid resolution must be positive");
  GridKernel g;
  g.m = m;
  g.matrix = validate_square(matrix, m);
  g.breakpoints.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    g.breakpoints[i] = static_cast<double>(i) / static_cast<double>(m);
  }
  return Kernel(std::move(g));
}

KernelKind Kernel::kind() const noexcept {
  switch (data_.index()) {
    case 0: return KernelKind::Constant;
    case 1: return KernelKind::Product;
    case 2: return KernelKind::Block;
    default: return KernelKind::Grid;
  }
}

double Kernel::eval(double x, double y) const {
  check_unit(x, "x");
  check_unit(y, "y");
  return std::visit(
      overloaded{
          [](const ConstantKernel& c) { return c.a; },
          [&](const ProductKernel& p) {
            return std::max(0.0, f_value(p, x)) * std::max(0.0, f_value(p, y));
          },
          [&](const StepKernel& s) {
            return s.value(locate(s.breakpoints, x), locate(s.breakpoints, y));
          },
      },
      data_);
}

double Kernel::marginal(double x) const {
  check_unit(x, "x");
  return std::visit(
      overloaded{
          [](const ConstantKernel& c) { return c.a; },
          [&](const ProductKernel& p) { return std::max(0.0, f_value(p, x)) * p.f_l1; },
          [&](const StepKernel& s) { return row_mass(s, locate(s.breakpoints, x)); },
      },
      data_);
}

double Kernel::marginal_integral(double lo, double hi) const {
  return std::visit(
      overloaded{
          [&](const ConstantKernel& c) { return c.a * (hi - lo); },
          [&](const ProductKernel& p) { return p.f_l1 * f_integral(p, lo, hi); },
          [&](const StepKernel& s) { return step_marginal_integral(s, lo, hi); },
      },
      data_);
}

double Kernel::marginal_discretized(std::size_t n, double x) const {
  if (n == 0) throw ArgumentError("n: must be at least 1");
  if (!(x > 0.0 && x <= 1.0)) {
    throw DomainError("x = " + std::to_string(x) + " lies outside (0, 1]");
  }
  const std::size_t i = cell_of(n, x);
  const double dn = static_cast<double>(n);
  return dn * marginal_integral(static_cast<double>(i - 1) / dn, static_cast<double>(i) / dn);
}

Nu0 nu0(const Kernel& w) {
  return std::visit(
      overloaded{
          [](const ConstantKernel& c) { return Nu0{c.a, Method::Exact}; },
          [&](const ProductKernel& p) {
            if (p.f_l1 == 0.0) return Nu0{0.0, Method::Exact};
            double fmin = INFINITY;
            bool all_exact = true;
            for (std::size_t k = 0; k < p.pieces.size(); ++k) {
              bool exact = false;
              fmin = std::min(fmin, p.pieces[k].minimum(p.breakpoints[k],
                                                        p.breakpoints[k + 1], exact));
              all_exact = all_exact && exact;
            }
            if (all_exact) return Nu0{std::max(0.0, fmin) * p.f_l1, Method::Exact};
            return Nu0{refine_min_discretized(w), Method::Approximate};
          },
          [](const StepKernel& s) {
            double best = INFINITY;
            for (std::size_t k = 0; k < s.blocks(); ++k) best = std::min(best, row_mass(s, k));
            return Nu0{best, Method::Exact};
          },
      },
      w.variant());
}

double lq_norm(const Kernel& w, double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw ArgumentError("q: exponent must be finite and greater than 1");
  }
  return std::visit(
      overloaded{
          [](const ConstantKernel& c) { return c.a; },
          [&](const ProductKernel& p) {
            // int int (f(x) f(y))^q = (int f^q)^2
            double acc = 0.0;
            for (std::size_t k = 0; k < p.pieces.size(); ++k) {
              const Polynomial& poly = p.pieces[k];
              acc += quadrature::gauss_legendre(
                  [&](double x) { return std::pow(std::max(0.0, poly(x)), q); },
                  p.breakpoints[k], p.breakpoints[k + 1]);
            }
            return std::pow(acc, 2.0 / q);
          },
          [&](const StepKernel& s) {
            double acc = 0.0;
            for (std::size_t k = 0; k < s.blocks(); ++k) {
              const double lk = s.breakpoints[k + 1] - s.breakpoints[k];
              for (std::size_t l = 0; l < s.blocks(); ++l) {
                const double ll = s.breakpoints[l + 1] - s.breakpoints[l];
                acc += std::pow(s.value(k, l), q) * lk * ll;
              }
            }
            return std::pow(acc, 1.0 / q);
          },
      },
      w.variant());
}

Irreducibility is_irreducible(const Kernel& w) {
  return std::visit(
      overloaded{
          [](const ConstantKernel& c) { return Irreducibility{c.a > 0.0, Method::Exact}; },
          [](const ProductKernel& p) {
            // A nonzero polynomial vanishes on a null set, so {f = 0} has
            // positive measure iff some piece is identically zero.
            const bool positive_ae =
                std::none_of(p.pieces.begin(), p.pieces.end(),
                             [](const Polynomial& poly) { return poly.is_zero(); });
            return Irreducibility{positive_ae, Method::Exact};
          },
          [](const StepKernel& s) {
            const std::size_t k = s.blocks();
            if (k == 1) return Irreducibility{s.value(0, 0) > 0.0, Method::Exact};
            std::vector<std::size_t> parent(k);
            std::iota(parent.begin(), parent.end(), std::size_t{0});
            auto find = [&](std::size_t v) {
              while (parent[v] != v) v = parent[v] = parent[parent[v]];
              return v;
            };
            std::size_t groups = k;
            for (std::size_t a = 0; a < k; ++a) {
              for (std::size_t b = a + 1; b < k; ++b) {
                if (s.value(a, b) > 0.0) {
                  const auto ra = find(a);
                  const auto rb = find(b);
                  if (ra != rb) {
                    parent[ra] = rb;
                    --groups;
                  }
                }
              }
            }
            return Irreducibility{groups == 1, Method::Exact};
          },
      },
      w.variant());
}

}  // namespace pirg
