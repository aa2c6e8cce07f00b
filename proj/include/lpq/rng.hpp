#pragma once

#include <cmath>
#include <cstdint>

namespace lpq {

// Counter-based generator: the splitmix64 finalizer applied to key + counter.
// A stream is fully determined by its key, so encoder and decoder can share
// randomness by exchanging a single 64-bit seed, and paired trials derive
// disjoint substreams with fork() instead of consuming a shared state.
class Rng {
 public:
  static constexpr const char* kName = "splitmix64-counter";

  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ULL)) {}

  // Independent substream; (key, tag) -> key' is itself a splitmix64 step.
  Rng fork(std::uint64_t tag) const {
    Rng r(0);
    r.key_ = mix(key_ + mix(tag ^ 0xbf58476d1ce4e5b9ULL));
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., n-1} via 128-bit multiply (n >= 1).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // +1 or -1 with equal probability.
  int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

  // Standard normal via Box-Muller on two fresh uniforms.
  double next_gaussian() {
    double u = 0.0;
    do {
      u = next_double();
    } while (u <= 0.0);
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lpq
