#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pirg/random.hpp"

namespace pirg {

// Walker/Vose alias table over nonnegative weights. O(K) construction,
// O(1) per draw. Zero-weight categories are excluded from the table so they
// can never be returned, whatever the rounding in construction.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  // Index into the original weight vector; requires !empty().
  std::size_t sample(Rng& rng) const noexcept;

  bool empty() const noexcept { return support_.empty(); }
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint32_t> support_;  // positive-weight categories
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;    // positions into support_
};

}  // namespace pirg
