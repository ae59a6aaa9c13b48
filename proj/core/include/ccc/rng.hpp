// Counter-based random numbers: every draw is a pure function of
// (seed, trial, stream). Trials can be generated out of order or in
// parallel and still reproduce bit-identical sequences.

#pragma once

#include <cstdint>

namespace ccc {

// SplitMix64 finalizer; a bijective 64-bit mix with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  // Uniform double in [0, 1) with 53 random mantissa bits.
  constexpr double uniform(std::uint64_t trial, std::uint64_t stream) const {
    const std::uint64_t word =
        mix64(mix64(mix64(seed_) ^ trial) ^ (0x517cc1b727220a95ULL * (stream + 1)));
    return static_cast<double>(word >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace ccc
