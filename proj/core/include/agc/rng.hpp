#pragma once

#include <cstdint>

namespace agc {

__extension__ using uint128 = unsigned __int128;

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream.
///
/// Draw number c of the stream seeded with s is
///   mix64(s + (c + 1) * 0x9e3779b97f4a7c15)
/// which is exactly the c-th output of a sequential SplitMix64 generator
/// started from state s. Every consumer in this library documents which
/// counter it uses, so results are reproducible from (seed, counter) alone
/// and in any language with 64-bit wrapping arithmetic.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  constexpr explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }

  constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
    return mix64(seed_ + (counter + 1) * kGolden);
  }

  /// Uniform double in [0, 1) from the top 53 bits of draw `counter`.
  constexpr double uniform01(std::uint64_t counter) const noexcept {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by Lemire's multiply-high reduction.
  constexpr std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const noexcept {
    const auto wide = static_cast<uint128>(at(counter)) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace agc
