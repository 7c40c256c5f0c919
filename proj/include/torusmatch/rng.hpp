#pragma once

#include <cstdint>

#include "torusmatch/geometry.hpp"

namespace torusmatch {

/// SplitMix64 finalizer. All deterministic randomness in the library is built
/// from this one mixer so results are identical across platforms.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based site hash keyed by (seed, absolute coordinates). Label
/// lookup is a pure function of the key, independent of generation order.
inline uint64_t site_hash(uint64_t seed, const Coord& p, int d) {
  uint64_t h = mix64(seed ^ 0x5be31c2f6d3a9e45ULL);
  for (int a = 0; a < d; ++a)
    h = mix64(h ^ static_cast<uint64_t>(static_cast<uint32_t>(p[static_cast<size_t>(a)])));
  return h;
}

/// One fair bit per site: the top bit of the site hash. 1 = blue, 0 = yellow.
inline int site_bit(uint64_t seed, const Coord& p, int d) {
  return static_cast<int>(site_hash(seed, p, d) >> 63);
}

/// Per-axis patch weight used by the separable patch hash: a fixed function
/// of (axis, relative offset), independent of the configuration.
inline uint64_t patch_weight(int axis, int32_t offset) {
  uint64_t h = mix64(0x9d8f3a217be450c3ULL ^ (static_cast<uint64_t>(axis) << 32) ^
                     static_cast<uint64_t>(static_cast<uint32_t>(offset)));
  return h | 1ULL;  // odd, so products never vanish mod 2^64
}

/// Small deterministic stream for tests and drivers (not used by any
/// equivariant rule).
class SplitMix {
 public:
  explicit SplitMix(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, n).
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

}  // namespace torusmatch
