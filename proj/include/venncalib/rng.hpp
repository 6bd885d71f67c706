#pragma once

#include <cstdint>

namespace venncalib::rng {

// Counter-based generator: output i of a stream with seed s is
// mix64(s + (i+1) * GAMMA), the SplitMix64 finalizer over an additive
// counter. Stateless given (seed, counter), so trials and repeats can be
// assigned independent streams and evaluated in any order or in parallel
// with identical results. The algorithm name is recorded in reports so
// splits stay reproducible across implementations.
inline constexpr char kAlgorithm[] = "splitmix64-ctr/1";

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Output `counter` of the stream with the given seed.
constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
  return mix64(seed + (counter + 1) * kGamma);
}

// Seed for sub-stream `index` within stream `stream` of a master seed.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return at(at(seed, stream), index);
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return at(seed_, counter_++); }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n) via the multiply-high reduction.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return next_unit() < p; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace venncalib::rng
