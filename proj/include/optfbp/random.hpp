#pragma once

#include <cstdint>

namespace optfbp::random {

/// splitmix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: the output is a pure function of the key and
/// the counters, so samples can be drawn in any order or thread.
constexpr std::uint64_t bits(std::uint64_t key, std::uint64_t c0, std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  std::uint64_t x = mix(key);
  x = mix(x ^ c0);
  x = mix(x ^ (c1 + 0x632be59bd9b4e019ULL));
  x = mix(x ^ (c2 + 0x8cb92ba72f3d8dd7ULL));
  return x;
}

/// Uniform in the open interval (0, 1) with 53 random bits.
constexpr double uniform(std::uint64_t key, std::uint64_t c0, std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  return (static_cast<double>(bits(key, c0, c1, c2) >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal by inverse CDF of uniform(key, c0, c1, c2).
double normal(std::uint64_t key, std::uint64_t c0, std::uint64_t c1 = 0, std::uint64_t c2 = 0);

/// Hash of a signed index, usable as a counter.
constexpr std::uint64_t index_counter(std::int64_t i) { return static_cast<std::uint64_t>(i); }

}  // namespace optfbp::random
