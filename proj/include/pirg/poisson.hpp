#pragma once

#include <cstdint>

#include "pirg/random.hpp"

namespace pirg {

// Exact Poisson(lambda) variate. Sequential-search inversion for
// lambda < 10, Hormann's transformed rejection (PTRS) otherwise.
// lambda must be finite and >= 0; lambda = 0 returns 0 without consuming
// randomness.
std::uint64_t poisson(Rng& rng, double lambda);

// log(k!) without touching global state (safe from concurrent threads).
double log_factorial(std::uint64_t k) noexcept;

}  // namespace pirg
