#pragma once

// Seeded random streams for the samplers. Worker w of a run with seed s
// draws from Xoshiro256ss::for_stream(s, w); the mapping is fixed so that
// a (seed, workers) pair always reproduces the same samples.

#include <cstdint>
#include <limits>

namespace compana {

/// SplitMix64: used only to expand seeds into generator state.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0; satisfies UniformRandomBitGenerator.
class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256ss(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  /// Generator with the given raw state (not all zero).
  static constexpr Xoshiro256ss from_state(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2,
                                           std::uint64_t s3) noexcept {
    Xoshiro256ss g(0);
    g.s_[0] = s0;
    g.s_[1] = s1;
    g.s_[2] = s2;
    g.s_[3] = s3;
    return g;
  }

  /// Substream for worker `stream` of a run seeded with `seed`.
  static Xoshiro256ss for_stream(std::uint64_t seed, std::uint64_t stream) noexcept {
    SplitMix64 mix(seed);
    const std::uint64_t a = mix.next();
    SplitMix64 mix2(stream ^ 0xD1B54A32D192ED03ULL);
    const std::uint64_t b = mix2.next();
    return Xoshiro256ss(a ^ (b * 0x9E3779B97F4A7C15ULL));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4] = {};
};

}  // namespace compana
