// Counter-based random streams: every variate is a pure function of
// (seed, index, slot), so parallel evaluation over sample indices cannot
// change results for a fixed seed.
#pragma once

#include <cstdint>

namespace monenv {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Uniform variate in [0, 1) for sample `index`, stream `slot`.
inline double u01(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  std::uint64_t h = detail::mix64(seed + 0x632BE59BD9B4E019ull * (index + 1) +
                                  0xD1B54A32D192ED03ull * (slot + 1));
  h = detail::mix64(h ^ (seed + 0x94D049BB133111EBull * (slot + 1)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace monenv
