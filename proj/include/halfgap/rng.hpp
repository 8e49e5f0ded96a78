#pragma once

#include <cmath>
#include <cstdint>

#include "halfgap/checked_int.hpp"

namespace halfgap {

/// Deterministic random source shared by every randomized component.
///
/// The generator is pinned down exactly so that runs are reproducible across
/// platforms from a 64-bit seed alone:
///   * state setup: four rounds of splitmix64 over the seed,
///   * stream: xoshiro256** (Blackman/Vigna),
///   * bounded integers: bitmask rejection (no modulo bias, no
///     implementation-defined std::uniform_int_distribution),
///   * doubles: 53 high bits scaled by 2^-53,
///   * normals: Marsaglia's polar method on top of the doubles above.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, n); n must be positive.
  uint64_t below(uint64_t n) {
    if (n == 0) throw input_error("Rng::below(0)");
    if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
    uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    while (true) {
      uint64_t r = next_u64() & mask;
      if (r < n) return r;
    }
  }

  /// Uniform integer in [lo, hi] inclusive.
  int64_t range_i64(int64_t lo, int64_t hi) {
    if (lo > hi) throw input_error("Rng::range_i64: empty range");
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool coin() { return (next_u64() & 1) != 0; }

  /// Standard normal via the polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  /// Derive an independent stream, e.g. one per trial index.
  Rng fork(uint64_t stream) {
    uint64_t x = next_u64() ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return Rng(x);
  }

  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t state_[4] = {};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace halfgap
