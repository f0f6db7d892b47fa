#pragma once

#include <cstdint>
#include <random>

namespace qloc {

/// Deterministic random source used wherever randomness is needed.
///
/// Wraps std::mt19937_64 but derives uniform doubles straight from the raw
/// 64-bit output, so sequences are identical across standard library
/// implementations. Not thread-safe: each concurrent trial owns one.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  int uniform_int(int lo, int hi) {
    const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
    const int v = lo + static_cast<int>(uniform01() * span);
    return v > hi ? hi : v;
  }

 private:
  std::mt19937_64 gen_;
};

/// SplitMix64 finalizer (standard 64-bit avalanche mix).
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent seed for (trial, stream) under a master seed. Keeps parallel
/// trials and per-method streams uncorrelated while staying reproducible
/// regardless of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial,
                                    std::uint64_t stream) {
  return splitmix64(splitmix64(master ^ splitmix64(trial)) ^ stream);
}

}  // namespace qloc
