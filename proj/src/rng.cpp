#include "rlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace rlab {

double counter_gauss(std::uint64_t seed, std::uint64_t index) {
  const double u1 = counter_unit_open(seed, 2 * index);
  const double u2 = counter_unit(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) {
  // Multiply-shift reduction; the modulo bias at 64 bits is negligible for
  // the permutation sizes used here.
  const std::uint64_t x = next_u64();
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(x) * bound) >> 64);
}

std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  CounterRng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                std::uint64_t grid_index,
                                std::uint64_t trial_index) {
  std::uint64_t h = mix64(master_seed + kSplitMix64Gamma);
  h = mix64(h ^ (grid_index + kSplitMix64Gamma));
  h = mix64(h ^ (trial_index + 2 * kSplitMix64Gamma));
  return h;
}

}  // namespace rlab
