#pragma once

#include <cstdint>
#include <random>

namespace dip {

// splitmix64 finalizer; full-avalanche mix used for all seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for (stream, index) under a root seed. Streams keep independent
// consumers (MC runs, RR samples, collections) from sharing sequences, and
// index-addressed children make parallel generation order-independent.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(splitmix64(root) ^ stream) ^ index);
}

// 53-bit uniform in [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform in [0,1) as a pure function of (seed, key, slot): randomness tied to
// identity instead of draw order, so traversals that visit edges in different
// orders still see identical realizations.
inline double unit_at(std::uint64_t seed, std::uint64_t key, std::uint64_t slot) noexcept {
  return to_unit(derive_seed(seed, key, slot));
}

// Stateful generator for sequential consumers. Uniform doubles are produced
// from raw engine output (never uniform_real_distribution, whose mapping is
// implementation-defined) so runs are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  double next_unit() { return to_unit(eng_()); }  // [0, 1)

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = eng_();
      if (x >= threshold) return x % n;
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Stream tags; arbitrary distinct constants.
namespace streams {
inline constexpr std::uint64_t kMcRun = 0x01;
inline constexpr std::uint64_t kCollection = 0x02;
inline constexpr std::uint64_t kSample = 0x03;
inline constexpr std::uint64_t kTarget = 0x04;
inline constexpr std::uint64_t kEdgeLive = 0x05;
inline constexpr std::uint64_t kEdgeDelay = 0x06;
}  // namespace streams

}  // namespace dip
