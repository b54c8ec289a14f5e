#ifndef FAIRDIV_RANDOM_HPP
#define FAIRDIV_RANDOM_HPP

#include <cstdint>
#include <initializer_list>

namespace fairdiv {

/// Deterministic counter-style generator, stream format "fairdiv-rng-v1":
/// the SplitMix64 sequence of Steele, Lea and Flood. The update and output
/// function are fixed so that any implementation language reproduces the
/// same stream from the same seed:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output = z ^ (z >> 31)
///
/// Sub-streams are derived with keyed(): starting from the seed, each key
/// word w replaces the state by next() ^ w. Unit doubles take the top 53
/// bits, giving values in [0, 1).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
    SplitMix64 g(seed);
    for (std::uint64_t w : words) g.state_ = g.next_u64() ^ w;
    return g;
  }

  constexpr std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, 1) with 53-bit resolution.
  constexpr double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound must be positive; modulo bias is
  /// negligible for the small bounds used here.
  constexpr std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace fairdiv

#endif  // FAIRDIV_RANDOM_HPP
