#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pirg/kernel.hpp"

namespace pirg {

// Poisson rates lambda_ij of the cell S_i x S_j, 1 <= i <= j <= n, with
// S_i = ((i-1)/n, i/n]. The unordered pair {i, j}, i < j, uses the single
// cell S_i x S_j; the diagonal pair uses the full square S_i x S_i.
//
// Rates are packed row-major over the upper triangle: row i holds
// lambda_ii, ..., lambda_in. Immutable after construction.
class RateTable {
 public:
  // `packed` must hold n(n+1)/2 finite nonnegative rates.
  RateTable(std::size_t n, double t, std::vector<double> packed);

  std::size_t n() const noexcept { return n_; }
  double t() const noexcept { return t_; }
  // Lambda = sum over i <= j of lambda_ij (compensated summation).
  double total() const noexcept { return total_; }

  // Rate of the unordered pair {i, j} (1-based, either order).
  double rate(std::size_t i, std::size_t j) const;
  std::span<const double> packed() const noexcept { return rates_; }

  static std::size_t cell_count(std::size_t n) noexcept { return n * (n + 1) / 2; }
  // Packed offset of (i, j), 1 <= i <= j <= n; no bounds checks.
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return (i - 1) * n_ - (i - 1) * (i - 2) / 2 + (j - i);
  }

 private:
  std::size_t n_;
  double t_;
  std::vector<double> rates_;
  double total_ = 0.0;
};

// lambda_ij = t * int_{S_i x S_j} W, closed form for every kernel variant.
double cell_rate(const Kernel& w, double t, std::size_t n, std::size_t i, std::size_t j);

// All n(n+1)/2 rates; n >= 2, t >= 0.
RateTable build_rate_table(const Kernel& w, double t, std::size_t n);

}  // namespace pirg
