#pragma once

#include <cstdint>

namespace stabfan {

// splitmix64: tiny, fast, and splittable by sample index — stream i is
// seeded by mixing (seed, i), so parallel sampling order can't change results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed);
    std::uint64_t mixed = r.next() + 0x9e3779b97f4a7c15ULL * (index + 1);
    return Rng(mixed);
  }

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, m) with negligible modulo bias for m << 2^64.
  std::uint64_t below(std::uint64_t m) { return next() % m; }

 private:
  std::uint64_t s_;
};

}  // namespace stabfan
