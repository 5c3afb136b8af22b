#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pirg/alias_table.hpp"
#include "pirg/multigraph.hpp"
#include "pirg/random.hpp"
#include "pirg/rate_table.hpp"

namespace pirg {

enum class SamplerKind { PerPair, Global };

std::string_view to_string(SamplerKind kind) noexcept;
// Accepts "per-pair" and "global"; throws ArgumentError otherwise.
SamplerKind sampler_from_string(std::string_view name);

// One Poisson(lambda_ij) draw per cell, cells visited in packed order.
MultiGraph sample_per_pair(const RateTable& rates, Rng& rng);

// Count-then-place realization of the same point process: N ~ Poisson(Lambda)
// points, each dropped into cell (i, j) with probability lambda_ij / Lambda.
// The alias table is built once; the sampler keeps a reference to `rates`,
// which must outlive it. operator() is const and may be called
// concurrently with distinct generators.
class GlobalSampler {
 public:
  explicit GlobalSampler(const RateTable& rates);
  MultiGraph operator()(Rng& rng) const;

 private:
  const RateTable* rates_;
  AliasTable alias_;
  std::vector<std::size_t> row_start_;  // packed offset of (i, i), size n + 2
};

// Convenience wrapper that builds a GlobalSampler for a single draw.
MultiGraph sample_global(const RateTable& rates, Rng& rng);

// Expected number of points (multi-edges plus self-loops), Lambda. For a
// kernel W this is t ||W||_1 / 2 plus a diagonal correction: the diagonal
// squares are counted in full, adding t/2 * sum_i int_{S_i x S_i} W, which is
// O(t/n) for bounded W.
double expected_edge_count(const RateTable& rates) noexcept;

}  // namespace pirg
