#pragma once

// Counter-based 64-bit generator. Rng(seed, stream) gives an independent,
// reproducible stream per (seed, stream) pair, so trial t of a batch can use
// Rng(seed, t) regardless of how trials are scheduled across threads.

#include <cstdint>
#include <limits>
#include <random>

namespace magicbcs {

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x6a09e667f3bcc909ULL))) {}

  result_type operator()() { return mix(key_ + (++counter_) * kGolden); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Uniform in [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(*this); }
  bool bit() { return ((*this)() >> 63) != 0; }
  // Uniform in [0, n).
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(*this); }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace magicbcs
