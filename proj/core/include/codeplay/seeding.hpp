#pragma once

#include <cstdint>

namespace codeplay {

/// splitmix64 finalizer over a combination of two values. Used to derive
/// per-step policy seeds from an episode seed.
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed handed to the policy interpreter at `step` of an episode.
constexpr std::uint64_t policy_seed(std::uint64_t episode_seed, int step) {
  return mix_seed(episode_seed, static_cast<std::uint64_t>(step));
}

}  // namespace codeplay
