#pragma once

#include <cstdint>
#include <vector>

namespace rlab {

// Project-wide counter-based generator: the i-th output is the SplitMix64
// finalizer applied to seed + (i+1) * golden-ratio increment. Every draw is a
// pure function of (seed, counter), so streams can be sliced and replayed
// deterministically on any platform.
inline constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t counter) {
  return mix64(seed + (counter + 1) * kSplitMix64Gamma);
}

// Uniform in (0, 1]; never returns 0 so log() below is safe.
inline double counter_unit_open(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>((counter_u64(seed, counter) >> 11) + 1) *
         (1.0 / 9007199254740992.0);
}

// Uniform in [0, 1).
inline double counter_unit(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(counter_u64(seed, counter) >> 11) *
         (1.0 / 9007199254740992.0);
}

// Standard normal variate addressed by index: Box-Muller on the uniforms at
// counters 2*index and 2*index + 1 (cosine branch only, so each variate is
// independently addressable).
double counter_gauss(std::uint64_t seed, std::uint64_t index);

// Sequential convenience wrapper over the counter stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return counter_u64(seed_, counter_++); }
  double next_unit() { return counter_unit(seed_, counter_++); }
  double next_gauss() { return counter_gauss(seed_, gauss_index_++); }

  // Integer in [0, bound) via rejection-free Lemire reduction; bound > 0.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::uint64_t gauss_index_ = 1u << 20;  // keep gauss and raw draws disjoint
};

// Seeded Fisher-Yates permutation of {0, ..., n-1}.
std::vector<int> random_permutation(int n, std::uint64_t seed);

// Mixes (master_seed, grid_index, trial_index) into a per-trial seed by
// absorbing each word through the SplitMix64 finalizer.
std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                std::uint64_t grid_index,
                                std::uint64_t trial_index);

}  // namespace rlab
