#include "nflab/rng.hpp"

#include <stdexcept>

namespace nflab {

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng CounterRng::stream(std::uint64_t id) const {
  return CounterRng(mix(seed_ ^ ((id + 1) * 0xD1B54A32D192ED03ULL)));
}

std::uint64_t CounterRng::next() {
  ++counter_;
  return mix(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() { return double(next() >> 11) * 0x1.0p-53; }

long CounterRng::uniform_int(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = std::uint64_t(hi) - std::uint64_t(lo) + 1;
  if (span == 0) return long(next());
  const std::uint64_t threshold = (0 - span) % span;  // 2^64 mod span
  std::uint64_t x;
  do {
    x = next();
  } while (x < threshold);
  return long(std::uint64_t(lo) + x % span);
}

}  // namespace nflab
