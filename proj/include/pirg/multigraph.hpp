#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pirg {

// One multi-edge: unordered pair (i, j), 1 <= i <= j <= n, with its point
// count. i == j is a self-loop.
struct Edge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Multigraph realization of the point process: sparse, sorted by (i, j),
// every stored multiplicity >= 1.
class MultiGraph {
 public:
  explicit MultiGraph(std::size_t n = 0) : n_(n) {}
  // Validates keys and multiplicities, sorts, and rejects duplicate pairs.
  // Pairs given as (j, i) with j > i are normalized.
  MultiGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::uint64_t total_points() const noexcept { return total_points_; }
  // 0 when the pair is absent.
  std::uint64_t multiplicity(std::uint32_t i, std::uint32_t j) const noexcept;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  struct Trusted {};
  MultiGraph(Trusted, std::size_t n, std::vector<Edge> edges, std::uint64_t total)
      : n_(n), edges_(std::move(edges)), total_points_(total) {}
  friend class MultiGraphBuilder;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::uint64_t total_points_ = 0;
};

// Appends edges already in strictly increasing (i, j) order; used by the
// samplers to skip re-validation.
class MultiGraphBuilder {
 public:
  explicit MultiGraphBuilder(std::size_t n) : n_(n) {}
  void reserve(std::size_t k) { edges_.reserve(k); }
  void push(std::uint32_t i, std::uint32_t j, std::uint64_t m) {
    edges_.push_back({i, j, m});
    total_ += m;
  }
  MultiGraph build() && {
    return MultiGraph(MultiGraph::Trusted{}, n_, std::move(edges_), total_);
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::uint64_t total_ = 0;
};

}  // namespace pirg
