#pragma once

#include <cstdint>
#include <random>

namespace superatom {

/// Independent, reproducible generator for stream `stream` of a run seeded with `seed`.
/// Results never depend on how streams are distributed over threads.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return std::mt19937_64(seq);
}

}  // namespace superatom
