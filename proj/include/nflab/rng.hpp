#pragma once

#include <cstdint>

namespace nflab {

/// Counter-based generator: draw n (n = 0, 1, ...) is the SplitMix64 output
/// mix(seed + (n + 1) * 0x9E3779B97F4A7C15), with
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// Independent streams use the seed mix(seed ^ ((stream + 1) * 0xD1B54A32D192ED03)).
/// Every value depends only on (seed, stream, counter), never on thread timing.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z);

  /// Generator for an independent sub-stream of this seed.
  CounterRng stream(std::uint64_t id) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [lo, hi]; rejection sampling, no modulo bias.
  long uniform_int(long lo, long hi);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace nflab
