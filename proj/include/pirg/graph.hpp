#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pirg/multigraph.hpp"

namespace pirg {

// Loop-free, multiplicity-free projection: pairs (i, j), i < j, sorted.
struct SimpleGraph {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

struct ComponentReport {
  std::size_t count = 0;
  // component_of[v - 1] for vertex v; ids 0..count-1 in order of each
  // component's smallest vertex.
  std::vector<std::uint32_t> component_of;
  std::vector<std::size_t> sizes;  // descending
  std::size_t isolated = 0;        // size-1 components
};

nlohmann::json to_json(const ComponentReport& report);

// Disjoint-set forest with union by rank and full path compression.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t v) noexcept;
  // Returns true when the two sets were distinct.
  bool unite(std::size_t a, std::size_t b) noexcept;
  std::size_t sets() const noexcept { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::size_t sets_;
};

SimpleGraph project_simple(const MultiGraph& g);
ComponentReport components(const MultiGraph& g);
// n = 1 counts as connected.
bool is_connected(const MultiGraph& g);
// Vertices with no non-loop incident edge.
std::size_t isolated_count(const MultiGraph& g);

// Overloads on the simple projection.
bool is_connected(const SimpleGraph& g);
std::size_t isolated_count(const SimpleGraph& g);

}  // namespace pirg
