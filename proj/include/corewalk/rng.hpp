#pragma once

#include <cstdint>
#include <initializer_list>

namespace corewalk {

// SplitMix64. Small state, trivially seedable, good enough statistics for
// walk generation and SGD noise. One independent stream per (seed, key...)
// tuple keeps every corpus reproducible regardless of the worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, 1), single precision.
  float next_float() {
    return static_cast<float>(next_u64() >> 40) * 0x1.0p-24f;
  }

  // Uniform in [0, n) for n >= 1. Multiply-shift; bias is O(n / 2^64).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// SplitMix64 finalizer, used as the mixing step for seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed and a key path,
// e.g. derive_seed(seed, {root, walk_index}). Order sensitive.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ULL);
  for (std::uint64_t k : keys) {
    s = mix64(s ^ (k + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2)));
  }
  return s;
}

// Salts for the derivation paths used across the pipeline. Never reuse one
// for a new purpose: that would silently correlate streams between stages.
namespace salt {
inline constexpr std::uint64_t kWalks = 0x57414c4b53ULL;
inline constexpr std::uint64_t kWalkShuffle = 0x5348ULL;
inline constexpr std::uint64_t kEmbedInit = 0x494e4954ULL;
inline constexpr std::uint64_t kEmbedTrain = 0x5452ULL;
inline constexpr std::uint64_t kEdgeRemoval = 0x52454dULL;
inline constexpr std::uint64_t kNegatives = 0x4e4547ULL;
inline constexpr std::uint64_t kSplitShuffle = 0x53504cULL;
inline constexpr std::uint64_t kLogistic = 0x4c4f47ULL;
inline constexpr std::uint64_t kPca = 0x504341ULL;
}  // namespace salt

}  // namespace corewalk
