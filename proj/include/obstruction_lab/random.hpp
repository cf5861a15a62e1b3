#pragma once

// Seeded streams. Each consumer derives its own engine from (seed, stream) so
// adding draws in one place never shifts the numbers seen elsewhere. The
// double conversion is done here rather than via <random> distributions,
// whose algorithms differ between standard libraries.

#include <cstdint>
#include <random>

namespace obstruction_lab {

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Fixed stream ids, one per generator.
namespace streams {
inline constexpr std::uint64_t kPerturbed = 0x7065727475726221ULL;
inline constexpr std::uint64_t kPoisson = 0x706f6973736f6e21ULL;
inline constexpr std::uint64_t kDeletion = 0x64656c6574696f6eULL;
inline constexpr std::uint64_t kTree = 0x7472656573656564ULL;
inline constexpr std::uint64_t kAnchors = 0x616e63686f727321ULL;
}  // namespace streams

}  // namespace obstruction_lab
