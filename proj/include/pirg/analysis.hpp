#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pirg/kernel.hpp"
#include "pirg/rate_table.hpp"

namespace pirg {

// Exact moments of the number Y_n of isolated vertices (no non-loop edge).
struct IsolationStats {
  std::vector<double> isolation_prob;   // P(I_i), index i - 1
  std::vector<double> expected_degree;  // sum_{j != i} p_ij
  double expected = 0.0;                // E[Y_n]
  double variance = 0.0;                // Var(Y_n)
  std::size_t clamp_events = 0;         // values pulled back into range

  // Var / E^2, or +inf when E = 0.
  double concentration_ratio() const noexcept;
};

// p_ij = 1 - exp(-lambda_ij) for i < j, evaluated as -expm1(-lambda).
double edge_prob(const RateTable& rates, std::size_t i, std::size_t j);

// P(I_i) = exp(-sum_{j != i} lambda_{ij}); the self-loop rate does not enter.
double isolation_prob(const RateTable& rates, std::size_t i);

// E[Y_n] = sum P(I_i) and
//   Var(Y_n) = sum_i P(I_i)(1 - P(I_i)) + sum_{i != j} P(I_i) P(I_j) (e^{lambda_ij} - 1),
// from P(I_i and I_j) = P(I_i) P(I_j) / (1 - p_ij). The pairwise term is formed in
// log space as exp(-L_i - L_j + lambda_ij) (1 - e^{-lambda_ij}) once lambda_ij > 30.
// O(n^2).
IsolationStats isolation_stats(const RateTable& rates);

// P(C_A): no edge between A and its complement. `subset` lists 1-based
// vertices; it must be nonempty, duplicate-free, and not all of [n].
double cut_prob(const RateTable& rates, std::span<const std::uint32_t> subset);

inline constexpr std::size_t kExactConnectivityMaxN = 16;

// Probability that the multigraph is connected, by the subset recursion
//   f(S) = 1 - sum_{T proper subset of S, 1 in T} f(T) prod_{i in T, j in S\T} (1 - p_ij)
// over root-containing S; returns f([n]). O(3^n) time, O(2^n) memory.
// Throws CapacityError when n > 16.
double exact_connectivity_prob(const RateTable& rates);

struct Threshold {
  double value = 0.0;  // c* = 1 / nu0
  Method method = Method::Exact;
};

// Throws NoThresholdError when nu0 = 0.
Threshold threshold(const Kernel& w);

}  // namespace pirg
