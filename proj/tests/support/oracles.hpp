// Independent reference implementations used only by the tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "pirg/kernel.hpp"
#include "pirg/multigraph.hpp"
#include "pirg/random.hpp"
#include "pirg/rate_table.hpp"

namespace oracle {

// P(connected) by summing over every simple-edge configuration; each pair
// i < j is present with probability 1 - exp(-lambda_ij) independently.
inline double connectivity_by_enumeration(const pirg::RateTable& rates) {
  const std::size_t n = rates.n();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const std::size_t m = pairs.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double prob = 1.0;
    std::vector<std::size_t> label(n);
    for (std::size_t v = 0; v < n; ++v) label[v] = v;
    for (std::size_t e = 0; e < m; ++e) {
      const double q = std::exp(-rates.rate(pairs[e].first + 1, pairs[e].second + 1));
      if (mask >> e & 1) {
        prob *= 1.0 - q;
        // relabel: merge components naively
        const std::size_t from = label[pairs[e].second];
        const std::size_t to = label[pairs[e].first];
        for (auto& l : label)
          if (l == from) l = to;
      } else {
        prob *= q;
      }
    }
    bool connected = true;
    for (auto l : label) connected = connected && l == label[0];
    if (connected) total += prob;
  }
  return total;
}

// Component label per vertex (0-based, labels in order of smallest vertex)
// by breadth-first search over non-loop edges.
inline std::vector<std::uint32_t> bfs_components(const pirg::MultiGraph& g) {
  const std::size_t n = g.n();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& e : g.edges()) {
    if (e.i == e.j) continue;
    adj[e.i - 1].push_back(e.j - 1);
    adj[e.j - 1].push_back(e.i - 1);
  }
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != UINT32_MAX) continue;
    std::queue<std::uint32_t> q;
    q.push(static_cast<std::uint32_t>(s));
    label[s] = next;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (auto w : adj[v]) {
        if (label[w] == UINT32_MAX) {
          label[w] = next;
          q.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

inline double poisson_pmf(std::uint64_t k, double lambda) {
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + static_cast<double>(k) * std::log(lambda) -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

// Pearson goodness-of-fit of integer samples against Poisson(lambda).
// Consecutive values are merged into bins with expected count >= 5; the
// last bin collects the upper tail.
inline ChiSquare poisson_gof(const std::vector<std::uint64_t>& samples, double lambda) {
  std::map<std::uint64_t, double> observed;
  for (auto s : samples) observed[s] += 1.0;
  const double N = static_cast<double>(samples.size());
  std::vector<double> exp_bins, obs_bins;
  double e_acc = 0.0, o_acc = 0.0, cdf = 0.0;
  std::uint64_t k = 0;
  while (true) {
    const double pk = poisson_pmf(k, lambda);
    cdf += pk;
    e_acc += N * pk;
    if (auto it = observed.find(k); it != observed.end()) o_acc += it->second;
    const double tail = N * (1.0 - cdf);
    if (e_acc >= 5.0 && tail >= 5.0) {
      exp_bins.push_back(e_acc);
      obs_bins.push_back(o_acc);
      e_acc = o_acc = 0.0;
    } else if (tail < 5.0) {
      break;
    }
    ++k;
  }
  // Tail bin: everything above k plus any pending mass.
  double o_tail = o_acc;
  for (auto it = observed.upper_bound(k); it != observed.end(); ++it) o_tail += it->second;
  exp_bins.push_back(N - [&] {
    double s = 0.0;
    for (double e : exp_bins) s += e;
    return s;
  }());
  obs_bins.push_back(o_tail);

  ChiSquare out;
  for (std::size_t b = 0; b < exp_bins.size(); ++b) {
    const double d = obs_bins[b] - exp_bins[b];
    out.statistic += d * d / exp_bins[b];
  }
  out.dof = exp_bins.size() - 1;
  out.p_value = out.dof == 0 ? 1.0
                             : boost::math::gamma_q(static_cast<double>(out.dof) / 2.0,
                                                    out.statistic / 2.0);
  return out;
}

// Upper-tail p-value of a chi-square statistic.
inline double chi_square_pvalue(double statistic, std::size_t dof) {
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

// Composite Simpson rule on [x0,x1] x [y0,y1] with `m` panels per axis.
inline double simpson_2d(const std::function<double(double, double)>& f, double x0, double x1,
                         double y0, double y1, std::size_t m = 200) {
  if (m % 2) ++m;
  const double hx = (x1 - x0) / static_cast<double>(m);
  const double hy = (y1 - y0) / static_cast<double>(m);
  auto w = [&](std::size_t k) { return (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0); };
  double acc = 0.0;
  for (std::size_t a = 0; a <= m; ++a)
    for (std::size_t b = 0; b <= m; ++b)
      acc += w(a) * w(b) * f(x0 + static_cast<double>(a) * hx, y0 + static_cast<double>(b) * hy);
  return acc * hx * hy / 9.0;
}

// Random symmetric rate table with entries uniform in [0, max_rate); zero
// entries with probability `zero_prob`.
inline pirg::RateTable random_rate_table(pirg::Rng& rng, std::size_t n, double max_rate,
                                         double zero_prob = 0.0) {
  std::vector<double> packed(pirg::RateTable::cell_count(n));
  for (auto& r : packed) r = rng.uniform() < zero_prob ? 0.0 : max_rate * rng.uniform();
  return pirg::RateTable(n, 1.0, std::move(packed));
}

// Random symmetric m x m grid kernel with entries in [0, scale).
inline pirg::Kernel random_grid_kernel(pirg::Rng& rng, std::size_t m, double scale = 2.0) {
  std::vector<std::vector<double>> mat(m, std::vector<double>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) mat[a][b] = mat[b][a] = scale * rng.uniform();
  return pirg::Kernel::grid(m, std::move(mat));
}

}  // namespace oracle
