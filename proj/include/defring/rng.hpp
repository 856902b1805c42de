#pragma once
#include <cstdint>

namespace defring {

// splitmix64: tiny deterministic counter-based generator, identical across
// platforms, so sampled counts and sampled check points are reproducible
// from the reported seed.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = next();
    } while (v >= lim);
    return v % n;
  }
};

}  // namespace defring
