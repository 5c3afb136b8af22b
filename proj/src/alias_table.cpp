#include "pirg/alias_table.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pirg/errors.hpp"

namespace pirg {

AliasTable::AliasTable(std::span<const double> weights) : size_(weights.size()) {
  if (weights.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("alias table: more than 2^32 categories");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double w = weights[k];
    if (!std::isfinite(w) || w < 0.0) {
      throw ArgumentError("weights[" + std::to_string(k) + "]: must be finite and nonnegative");
    }
    if (w > 0.0) {
      support_.push_back(static_cast<std::uint32_t>(k));
      total += w;
    }
  }
  const std::size_t count = support_.size();
  prob_.assign(count, 1.0);
  alias_.resize(count);
  if (count == 0) return;

  std::vector<double> scaled(count);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t s = 0; s < count; ++s) {
    scaled[s] = weights[support_[s]] * static_cast<double>(count) / total;
    alias_[s] = static_cast<std::uint32_t>(s);
    (scaled[s] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(s));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t less = small.back();
    small.pop_back();
    const std::uint32_t more = large.back();
    prob_[less] = scaled[less];
    alias_[less] = more;
    scaled[more] = (scaled[more] + scaled[less]) - 1.0;
    if (scaled[more] < 1.0) {
      large.pop_back();
      small.push_back(more);
    }
  }
  // Leftovers carry scaled weight 1 up to rounding.
  for (auto s : small) prob_[s] = 1.0;
  for (auto s : large) prob_[s] = 1.0;
}

std::size_t AliasTable::sample(Rng& rng) const noexcept {
  const auto column = static_cast<std::size_t>(rng.below(support_.size()));
  const bool keep = rng.uniform() < prob_[column];
  return support_[keep ? column : alias_[column]];
}

}  // namespace pirg
