#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace sbpp {

/// Bijective 64-bit mixer (splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for stream `stream_index` under `master_seed`. Injective in
/// stream_index for a fixed master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                    std::uint64_t stream_index) {
  return mix64(master_seed + mix64(stream_index));
}

/// Seedable random stream used by every stochastic operation.
///
/// xoshiro256** engine, state filled from the seed by splitmix64. The
/// distributions are implemented here rather than with
/// std::uniform_*_distribution (implementation-defined), so one seed gives
/// bitwise-identical draws on every platform and standard library.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) {
    for (auto& word : state_) {
      word = mix64(seed);
      seed += 0x9e3779b97f4a7c15ULL;
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi); returns lo when hi == lo.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform index on {0, ..., n-1}; n must be positive. Unbiased (rejection).
  std::size_t index(std::size_t n);

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace sbpp
