#pragma once

#include <cstdint>
#include <string_view>

namespace faleval::detail {

// Tiny fully-specified generators so that streams are identical across
// platforms and standard libraries.

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection.
  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t limit = ~0ull - ~0ull % bound;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  double unit_double() {  // [0, 1) with 53 random bits
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

}  // namespace faleval::detail
