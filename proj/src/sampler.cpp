#include "pirg/sampler.hpp"

#include <algorithm>
#include <string>

#include "pirg/errors.hpp"
#include "pirg/poisson.hpp"

namespace pirg {

std::string_view to_string(SamplerKind kind) noexcept {
  return kind == SamplerKind::PerPair ? "per-pair" : "global";
}

SamplerKind sampler_from_string(std::string_view name) {
  if (name == "per-pair") return SamplerKind::PerPair;
  if (name == "global") return SamplerKind::Global;
  throw ArgumentError("sampler: expected 'per-pair' or 'global', got '" + std::string(name) + "'");
}

MultiGraph sample_per_pair(const RateTable& rates, Rng& rng) {
  const auto n = static_cast<std::uint32_t>(rates.n());
  const auto packed = rates.packed();
  MultiGraphBuilder builder(n);
  std::size_t k = 0;
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = i; j <= n; ++j, ++k) {
      const std::uint64_t m = poisson(rng, packed[k]);
      if (m > 0) builder.push(i, j, m);
    }
  }
  return std::move(builder).build();
}

GlobalSampler::GlobalSampler(const RateTable& rates)
    : rates_(&rates), alias_(rates.packed()), row_start_(rates.n() + 2) {
  const std::size_t n = rates.n();
  for (std::size_t i = 1; i <= n + 1; ++i) {
    row_start_[i] = i <= n ? rates.index(i, i) : RateTable::cell_count(n);
  }
}

MultiGraph GlobalSampler::operator()(Rng& rng) const {
  const auto n = static_cast<std::uint32_t>(rates_->n());
  MultiGraphBuilder builder(n);
  if (alias_.empty()) return std::move(builder).build();
  const std::uint64_t points = poisson(rng, rates_->total());
  std::vector<std::size_t> cells(points);
  for (auto& c : cells) c = alias_.sample(rng);
  std::sort(cells.begin(), cells.end());

  builder.reserve(cells.size());
  std::uint32_t row = 1;
  for (std::size_t a = 0; a < cells.size();) {
    std::size_t b = a;
    while (b < cells.size() && cells[b] == cells[a]) ++b;
    while (cells[a] >= row_start_[row + 1]) ++row;
    const auto col = static_cast<std::uint32_t>(row + (cells[a] - row_start_[row]));
    builder.push(row, col, b - a);
    a = b;
  }
  return std::move(builder).build();
}

MultiGraph sample_global(const RateTable& rates, Rng& rng) {
  return GlobalSampler(rates)(rng);
}

double expected_edge_count(const RateTable& rates) noexcept { return rates.total(); }

}  // namespace pirg
