#include "pirg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pirg/errors.hpp"
#include "pirg/graph.hpp"

namespace pirg {
namespace {

constexpr double kLogSpaceRate = 30.0;

double clamp_unit(double p, std::size_t& events) {
  if (p < 0.0) {
    ++events;
    return 0.0;
  }
  if (p > 1.0) {
    ++events;
    return 1.0;
  }
  return p;
}

void check_vertex(const RateTable& rates, std::size_t i) {
  if (i < 1 || i > rates.n()) {
    throw IndexError("vertex " + std::to_string(i) + " outside [1, " +
                     std::to_string(rates.n()) + "]");
  }
}

// L_i = sum_{j != i} lambda_ij for every vertex.
std::vector<double> crossing_rates(const RateTable& rates) {
  const std::size_t n = rates.n();
  const auto packed = rates.packed();
  std::vector<double> out(n, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++k;  // diagonal
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      out[i] += packed[k];
      out[j] += packed[k];
    }
  }
  return out;
}

}  // namespace

double IsolationStats::concentration_ratio() const noexcept {
  if (expected == 0.0) return std::numeric_limits<double>::infinity();
  return variance / (expected * expected);
}

double edge_prob(const RateTable& rates, std::size_t i, std::size_t j) {
  check_vertex(rates, i);
  check_vertex(rates, j);
  if (i == j) throw IndexError("edge_prob: self-pair (" + std::to_string(i) + ", " +
                               std::to_string(j) + ") has no simple-edge probability");
  std::size_t events = 0;
  return clamp_unit(-std::expm1(-rates.rate(i, j)), events);
}

double isolation_prob(const RateTable& rates, std::size_t i) {
  check_vertex(rates, i);
  double sum = 0.0;
  for (std::size_t j = 1; j <= rates.n(); ++j) {
    if (j != i) sum += rates.rate(i, j);
  }
  return std::exp(-sum);
}

IsolationStats isolation_stats(const RateTable& rates) {
  const std::size_t n = rates.n();
  const auto packed = rates.packed();
  const std::vector<double> load = crossing_rates(rates);

  IsolationStats s;
  s.isolation_prob.resize(n);
  s.expected_degree.assign(n, 0.0);
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = clamp_unit(std::exp(-load[i]), s.clamp_events);
    s.isolation_prob[i] = p;
    s.expected += p;
    diag += p * (1.0 - p);
  }

  double pairs = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++k;
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double lambda = packed[k];
      const double pij = clamp_unit(-std::expm1(-lambda), s.clamp_events);
      s.expected_degree[i] += pij;
      s.expected_degree[j] += pij;
      if (lambda == 0.0) continue;
      const double log_both = -load[i] - load[j];
      double term;
      if (lambda > kLogSpaceRate) {
        term = std::exp(log_both + lambda + std::log1p(-std::exp(-lambda)));
      } else {
        term = std::exp(log_both) * std::expm1(lambda);
      }
      row += term;
    }
    pairs += row;
  }
  s.variance = diag + 2.0 * pairs;
  if (s.variance < 0.0) {
    ++s.clamp_events;
    s.variance = 0.0;
  }
  return s;
}

double cut_prob(const RateTable& rates, std::span<const std::uint32_t> subset) {
  const std::size_t n = rates.n();
  if (subset.empty()) throw ArgumentError("subset: must be nonempty");
  std::vector<bool> inside(n, false);
  for (auto v : subset) {
    check_vertex(rates, v);
    if (inside[v - 1]) throw ArgumentError("subset: vertex " + std::to_string(v) + " repeated");
    inside[v - 1] = true;
  }
  if (subset.size() == n) throw ArgumentError("subset: must be a proper subset of the vertices");
  // Crossing pairs are summed in packed order, so A and its complement (and a
  // singleton and isolation_prob) accumulate identical terms in identical order.
  const auto packed = rates.packed();
  double crossing = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++k;
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (inside[i] != inside[j]) crossing += packed[k];
    }
  }
  return std::exp(-crossing);
}

double exact_connectivity_prob(const RateTable& rates) {
  const std::size_t n = rates.n();
  if (n > kExactConnectivityMaxN) {
    throw CapacityError("exact connectivity is limited to n <= " +
                        std::to_string(kExactConnectivityMaxN) + " (got n = " +
                        std::to_string(n) + ")");
  }
  if (n <= 1) return 1.0;
  {
    DisjointSets support(n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        if (rates.rate(i, j) > 0.0) support.unite(i - 1, j - 1);
      }
    }
    if (support.sets() > 1) return 0.0;
  }
  const std::size_t full = (std::size_t{1} << n) - 1;

  // to[i][U] = sum_{j in U} lambda_ij. Summing exact zeros keeps the
  // crossing rate of a reducible split exactly zero.
  const std::size_t subsets = full + 1;
  std::vector<double> to(n * subsets, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = to.data() + i * subsets;
    for (std::size_t u = 1; u <= full; ++u) {
      const auto low = static_cast<std::size_t>(__builtin_ctzll(u));
      row[u] = row[u & (u - 1)] + (low == i ? 0.0 : rates.rate(i + 1, low + 1));
    }
  }

  // f over root-containing subsets (bit 0 set).
  std::vector<double> conn(full + 1, 0.0);
  conn[1] = 1.0;
  for (std::size_t s = 3; s <= full; s += 2) {
    const std::size_t others = s & ~std::size_t{1};
    double disconnected = 0.0;
    // T = {root} | sub for every proper subset sub of others.
    for (std::size_t sub = (others - 1) & others;; sub = (sub - 1) & others) {
      const std::size_t t = sub | 1;
      const std::size_t u = s & ~t;
      double cross = 0.0;
      for (std::size_t r = t; r != 0; r &= r - 1) {
        cross += to[static_cast<std::size_t>(__builtin_ctzll(r)) * subsets + u];
      }
      disconnected += conn[t] * std::exp(-cross);
      if (sub == 0) break;
    }
    conn[s] = std::clamp(1.0 - disconnected, 0.0, 1.0);
  }
  return conn[full];
}

Threshold threshold(const Kernel& w) {
  const Nu0 v = nu0(w);
  if (!(v.value > 0.0)) {
    throw NoThresholdError("nu0 = 0: no finite connectivity threshold for t = c n log n");
  }
  return Threshold{1.0 / v.value, v.method};
}

}  // namespace pirg
