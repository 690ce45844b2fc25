#pragma once

#include <cstdint>

namespace pursuit {

// splitmix64 (Steele, Lea, Flood 2014). Chosen over <random> engines because
// its output is a pure function of the 64-bit state with no implementation
// latitude, so seeded experiment results are bit-stable across compilers and
// standard libraries.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

// Stream for game `index` under a run-level seed. Each game draws from its own
// stream, so parallel runs produce identical records regardless of how games
// are scheduled across threads.
inline SplitMix64 game_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

}  // namespace pursuit
