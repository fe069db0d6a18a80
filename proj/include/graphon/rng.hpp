#pragma once

#include <cmath>
#include <cstdint>

namespace graphon {

// Identifier reported by --version and in docs. Bumping the constants or the
// derivation scheme below requires a new version string.
inline constexpr const char* kRngAlgorithm = "splitmix64-counter-v1";

// Counter-based generator built on the splitmix64 finalizer. A stream is a
// 64-bit key; draw i of a stream is finalize(key + golden * (i+1)), i.e. the
// plain splitmix64 sequence started at the key. Sub-streams are derived by
// hashing the key with a component index, so consumers addressed by
// (seed, i, j, ...) draw identical values regardless of evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(finalize(seed + kDomainSalt)) {}

  CounterRng derive(std::uint64_t component) const {
    return CounterRng(Raw{}, finalize((key_ ^ finalize(component + kGolden)) + kDeriveSalt));
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return finalize(key_ + kGolden * (counter + 1));
  }

  // Uniform on [0,1), 53 random bits.
  double uniform01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes counters 2c and 2c+1.
  double normal(std::uint64_t counter) const {
    const double u1 =
        (static_cast<double>(bits(2 * counter) >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    const double u2 = static_cast<double>(bits(2 * counter + 1) >> 11) * 0x1.0p-53;
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
    return bits(counter) % n;
  }

  std::uint64_t key() const { return key_; }

 private:
  struct Raw {};
  CounterRng(Raw, std::uint64_t key) : key_(key) {}

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kDomainSalt = 0xA24BAED4963EE407ull;
  static constexpr std::uint64_t kDeriveSalt = 0x9FB21C651E98DF25ull;

  std::uint64_t key_;
};

}  // namespace graphon
