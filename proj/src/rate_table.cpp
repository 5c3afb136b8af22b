#include "pirg/rate_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pirg/errors.hpp"

namespace pirg {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double neumaier_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double lower(std::size_t n, std::size_t i) {
  return static_cast<double>(i - 1) / static_cast<double>(n);
}
double upper(std::size_t n, std::size_t i) {
  return static_cast<double>(i) / static_cast<double>(n);
}

struct Overlap {
  std::size_t block;
  double length;
};

// Blocks intersecting S_i with the length of each intersection.
std::vector<Overlap> block_overlaps(const StepKernel& s, std::size_t n, std::size_t i) {
  std::vector<Overlap> out;
  const double lo = lower(n, i);
  const double hi = upper(n, i);
  for (std::size_t k = locate(s.breakpoints, lo); k < s.blocks(); ++k) {
    const double len =
        std::max(0.0, std::min(hi, s.breakpoints[k + 1]) - std::max(lo, s.breakpoints[k]));
    if (len > 0.0) out.push_back({k, len});
    if (s.breakpoints[k + 1] >= hi) break;
  }
  return out;
}

double step_cell(const StepKernel& s, const std::vector<Overlap>& oi,
                 const std::vector<Overlap>& oj) {
  double acc = 0.0;
  for (const auto& a : oi) {
    for (const auto& b : oj) acc += s.value(a.block, b.block) * a.length * b.length;
  }
  return acc;
}

double product_cell_mass(const ProductKernel& p, std::size_t n, std::size_t i) {
  const double lo = lower(n, i);
  const double hi = upper(n, i);
  double total = 0.0;
  for (std::size_t k = locate(p.breakpoints, lo); k < p.pieces.size(); ++k) {
    const double a = std::max(lo, p.breakpoints[k]);
    const double b = std::min(hi, p.breakpoints[k + 1]);
    if (b > a) total += p.pieces[k].integrate(a, b);
    if (p.breakpoints[k + 1] >= hi) break;
  }
  return std::max(0.0, total);
}

void check_t(double t) {
  if (!std::isfinite(t) || t < 0.0) throw ArgumentError("t: intensity must be finite and >= 0");
}

}  // namespace

RateTable::RateTable(std::size_t n, double t, std::vector<double> packed)
    : n_(n), t_(t), rates_(std::move(packed)) {
  if (n_ < 1) throw ArgumentError("n: must be at least 1");
  check_t(t_);
  if (rates_.size() != cell_count(n_)) {
    throw ArgumentError("rates: expected " + std::to_string(cell_count(n_)) +
                        " packed entries, got " + std::to_string(rates_.size()));
  }
  for (std::size_t k = 0; k < rates_.size(); ++k) {
    if (!std::isfinite(rates_[k]) || rates_[k] < 0.0) {
      throw ArgumentError("rates[" + std::to_string(k) + "]: must be finite and nonnegative");
    }
  }
  total_ = neumaier_sum(rates_);
}

double RateTable::rate(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > n_) {
    throw IndexError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside [1, " + std::to_string(n_) + "]");
  }
  return rates_[index(i, j)];
}

double cell_rate(const Kernel& w, double t, std::size_t n, std::size_t i, std::size_t j) {
  check_t(t);
  if (i < 1 || j > n || i > j) {
    throw IndexError("cell (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") requires 1 <= i <= j <= n = " + std::to_string(n));
  }
  return std::visit(
      overloaded{
          [&](const ConstantKernel& c) {
            return t * c.a / (static_cast<double>(n) * static_cast<double>(n));
          },
          [&](const ProductKernel& p) {
            return t * product_cell_mass(p, n, i) * product_cell_mass(p, n, j);
          },
          [&](const StepKernel& s) {
            return t * step_cell(s, block_overlaps(s, n, i), block_overlaps(s, n, j));
          },
      },
      w.variant());
}

RateTable build_rate_table(const Kernel& w, double t, std::size_t n) {
  if (n < 2) throw ArgumentError("n: rate tables need at least 2 vertices");
  check_t(t);
  std::vector<double> packed(RateTable::cell_count(n));
  std::visit(
      overloaded{
          [&](const ConstantKernel& c) {
            std::fill(packed.begin(), packed.end(),
                      t * c.a / (static_cast<double>(n) * static_cast<double>(n)));
          },
          [&](const ProductKernel& p) {
            std::vector<double> mass(n + 1);
            for (std::size_t i = 1; i <= n; ++i) mass[i] = product_cell_mass(p, n, i);
            std::size_t k = 0;
            for (std::size_t i = 1; i <= n; ++i) {
              for (std::size_t j = i; j <= n; ++j) packed[k++] = t * mass[i] * mass[j];
            }
          },
          [&](const StepKernel& s) {
            std::vector<std::vector<Overlap>> ov(n + 1);
            for (std::size_t i = 1; i <= n; ++i) ov[i] = block_overlaps(s, n, i);
            std::size_t k = 0;
            for (std::size_t i = 1; i <= n; ++i) {
              for (std::size_t j = i; j <= n; ++j) packed[k++] = t * step_cell(s, ov[i], ov[j]);
            }
          },
      },
      w.variant());
  return RateTable(n, t, std::move(packed));
}

}  // namespace pirg
