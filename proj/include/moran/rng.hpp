#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace moran {

// Repository-wide generator: std::mt19937_64, seeded through SplitMix64.
// All variate transforms used by the simulators are written out below
// instead of going through std::*_distribution, so a given seed yields the
// same event sequence on every standard library. Cross-version bit
// stability of streams is not promised; within-build determinism is.
using RngEngine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stream seed for a (master seed, grid cell, replicate) triple. Pure
// function of its inputs, so sweep output cannot depend on scheduling.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t grid_index,
                                        std::uint64_t replicate) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ (0x9E3779B97F4A7C15ULL + grid_index));
  h = splitmix64(h ^ (0xC2B2AE3D27D4EB4FULL + replicate));
  return h;
}

inline RngEngine make_engine(std::uint64_t seed) {
  return RngEngine(splitmix64(seed));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(RngEngine& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n); rejection sampling, no modulo bias.
inline std::uint64_t uniform_below(RngEngine& rng, std::uint64_t n) {
  std::uint64_t x = rng();
  std::uint64_t r = x % n;
  while (x - r > std::uint64_t(0) - n) {
    x = rng();
    r = x % n;
  }
  return r;
}

// Exponential waiting time with the given rate (> 0).
inline double exponential(RngEngine& rng, double rate) {
  return -std::log1p(-uniform_unit(rng)) / rate;
}

}  // namespace moran
