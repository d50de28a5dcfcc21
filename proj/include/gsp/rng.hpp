#pragma once

#include <cstdint>

namespace gsp {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream key from a master seed and a stream id
/// (trial number, vertex index, sweep point).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Counter-based generator: draw k of stream `key` is a pure function of (key, k).
/// Identical sequences on every platform, and any draw can be addressed
/// directly, which is what the per-vertex Bernoulli streams rely on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(derive_seed(seed, stream)) {}

  std::uint64_t next_u64() noexcept { return mix64(key_ ^ mix64(counter_++)); }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, cosine branch only).
  double normal() noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Value of draw `counter` of stream `key`, without touching any state.
  static double uniform_at(std::uint64_t key, std::uint64_t counter) noexcept {
    return static_cast<double>(mix64(key ^ mix64(counter)) >> 11) * 0x1.0p-53;
  }
  static double normal_at(std::uint64_t key, std::uint64_t counter) noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gsp
