#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pirg {

// SplitMix64 finalizer; the mixing function used for stream derivation.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// xoshiro256** generator. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with
  // rejection).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::array<std::uint64_t, 4> s_;
};

// Purpose tags keep streams for different uses of the same replicate apart.
enum class Purpose : std::uint64_t {
  Sample = 1,
  Sweep = 2,
  OracleCheck = 3,
  Test = 4,
};

// Identifies one random stream: (master seed, replicate index, purpose
// tag). Derivation:
//   s = splitmix64(splitmix64(master) ^ replicate)
//   s = splitmix64(s ^ purpose)
// and the generator is seeded with s. The harness folds the sweep row
// index into the purpose word as (row << 8) | Purpose::Sweep.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t replicate = 0;
  std::uint64_t purpose = static_cast<std::uint64_t>(Purpose::Sample);

  std::uint64_t derive() const noexcept;
  Rng stream() const noexcept { return Rng(derive()); }
};

}  // namespace pirg
