#pragma once

#include <cstdint>
#include <random>

namespace chartlab {

// SplitMix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic per-stream seed from a base seed and a stream index, so
// per-sample noise does not depend on the parallel schedule.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(base ^ mix_seed(stream + 1));
}

inline std::mt19937_64 make_engine(std::uint64_t base, std::uint64_t stream) {
  return std::mt19937_64(stream_seed(base, stream));
}

}  // namespace chartlab
