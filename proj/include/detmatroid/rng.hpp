#pragma once

// Seed policy: every command takes one 64-bit seed. Each module draws from
// its own stream, and each trial or sample inside a module from a
// substream, so adding draws in one place never shifts another.

#include <cstdint>
#include <random>

namespace detmatroid {

enum class Stream : std::uint64_t { oracle = 1, census = 2, sampling = 3, completion = 4 };

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t substream = 0) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s) ^ static_cast<std::uint64_t>(stream);
  std::uint64_t b = splitmix64(a) ^ substream;
  return splitmix64(b);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, Stream stream, std::uint64_t substream = 0) {
  return std::mt19937_64(derive_seed(seed, stream, substream));
}

// Uniform in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace detmatroid
