#include "pirg/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace pirg {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0), sets_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t v) noexcept {
  std::size_t root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    const std::size_t next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) noexcept {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  --sets_;
  return true;
}

SimpleGraph project_simple(const MultiGraph& g) {
  SimpleGraph s;
  s.n = g.n();
  for (const auto& e : g.edges()) {
    if (e.i != e.j) s.edges.emplace_back(e.i, e.j);
  }
  return s;
}

ComponentReport components(const MultiGraph& g) {
  const std::size_t n = g.n();
  DisjointSets dsu(n);
  for (const auto& e : g.edges()) {
    if (e.i != e.j) dsu.unite(e.i - 1, e.j - 1);
  }
  ComponentReport report;
  report.count = dsu.sets();
  report.component_of.assign(n, 0);
  std::vector<std::uint32_t> id_of_root(n, UINT32_MAX);
  std::vector<std::size_t> size_by_id;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t root = dsu.find(v);
    if (id_of_root[root] == UINT32_MAX) {
      id_of_root[root] = static_cast<std::uint32_t>(size_by_id.size());
      size_by_id.push_back(0);
    }
    report.component_of[v] = id_of_root[root];
    ++size_by_id[id_of_root[root]];
  }
  report.isolated = static_cast<std::size_t>(
      std::count(size_by_id.begin(), size_by_id.end(), std::size_t{1}));
  report.sizes = std::move(size_by_id);
  std::sort(report.sizes.begin(), report.sizes.end(), std::greater<>());
  return report;
}

bool is_connected(const MultiGraph& g) {
  if (g.n() <= 1) return true;
  DisjointSets dsu(g.n());
  for (const auto& e : g.edges()) {
    if (e.i != e.j && dsu.unite(e.i - 1, e.j - 1) && dsu.sets() == 1) return true;
  }
  return dsu.sets() == 1;
}

std::size_t isolated_count(const MultiGraph& g) {
  std::vector<bool> touched(g.n(), false);
  for (const auto& e : g.edges()) {
    if (e.i != e.j) {
      touched[e.i - 1] = true;
      touched[e.j - 1] = true;
    }
  }
  return static_cast<std::size_t>(std::count(touched.begin(), touched.end(), false));
}

bool is_connected(const SimpleGraph& g) {
  if (g.n <= 1) return true;
  DisjointSets dsu(g.n);
  for (const auto& [i, j] : g.edges) dsu.unite(i - 1, j - 1);
  return dsu.sets() == 1;
}

std::size_t isolated_count(const SimpleGraph& g) {
  std::vector<bool> touched(g.n, false);
  for (const auto& [i, j] : g.edges) {
    touched[i - 1] = true;
    touched[j - 1] = true;
  }
  return static_cast<std::size_t>(std::count(touched.begin(), touched.end(), false));
}

nlohmann::json to_json(const ComponentReport& report) {
  return {{"count", report.count},
          {"sizes", report.sizes},
          {"isolated", report.isolated},
          {"component_of", report.component_of}};
}

}  // namespace pirg
