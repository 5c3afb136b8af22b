#include "pirg/multigraph.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "pirg/errors.hpp"

namespace pirg {

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 1 || e.j > n_) {
      throw IndexError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                       ") outside [1, " + std::to_string(n_) + "]");
    }
    if (e.multiplicity == 0) {
      throw ArgumentError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                          "): multiplicity must be >= 1");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j) {
      throw ArgumentError("edge (" + std::to_string(edges_[k].i) + ", " +
                          std::to_string(edges_[k].j) + ") listed twice");
    }
  }
  for (const auto& e : edges_) total_points_ += e.multiplicity;
}

std::uint64_t MultiGraph::multiplicity(std::uint32_t i, std::uint32_t j) const noexcept {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{i, j},
                             [](const Edge& e, const std::pair<std::uint32_t, std::uint32_t>& key) {
                               return e.i != key.first ? e.i < key.first : e.j < key.second;
                             });
  if (it != edges_.end() && it->i == i && it->j == j) return it->multiplicity;
  return 0;
}

}  // namespace pirg
