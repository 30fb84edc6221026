#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pursuitsim::detail {

// Uniform double in [lo, hi] from the top 53 bits of the generator output.
// Hand-rolled so results do not depend on the standard library's
// distribution implementation.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = (rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

// FNV-1a, used to derive per-component seeds from (seed, label) pairs.
inline std::uint64_t fnv1a(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (char c : label) mix(static_cast<unsigned char>(c));
  return h;
}

}  // namespace pursuitsim::detail
