#pragma once

#include <cstdint>

namespace mpcc {

// splitmix64 finalizer. Used both as a sequential generator and as the mixing
// function for counter-based draws, so every coin flip is a pure function of
// (seed, stream, counters) and independent of evaluation order.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Independent stream tags for counter-based draws.
enum class RngStream : uint64_t {
  kLeaderCoin = 1,
  kShrinkEdge = 2,
  kReductionEdge = 3,
  kGnm = 4,
};

inline uint64_t counter_hash(uint64_t seed, RngStream stream, uint64_t a, uint64_t b) {
  uint64_t h = mix64(seed ^ 0x2545f4914f6cdd1dull);
  h = mix64(h ^ static_cast<uint64_t>(stream));
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return h;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double counter_u01(uint64_t seed, RngStream stream, uint64_t a, uint64_t b) {
  return static_cast<double>(counter_hash(seed, stream, a, b) >> 11) * 0x1.0p-53;
}

// Small sequential generator for the graph generators. Not std::mt19937 so
// that byte-identical output does not depend on library internals.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(mix64(seed ^ 0x9e3779b97f4a7c15ull)) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Unbiased draw from [0, bound) by rejection.
  uint64_t bounded(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  uint64_t state_;
};

}  // namespace mpcc
