#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "floodrisk/normal.hpp"

namespace floodrisk {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer, used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Engine for substream `index` of `seed`. Work split into blocks draws from
/// one substream per block, so results do not depend on the worker count.
inline Engine substream(std::uint64_t seed, std::uint64_t index) {
  return Engine(mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL)));
}

/// Uniform on the open interval (0, 1), 53 bits.
inline double uniform_open(Engine& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_normal(Engine& engine) { return normal_quantile(uniform_open(engine)); }

inline double exponential(Engine& engine, double rate) { return -std::log(uniform_open(engine)) / rate; }

/// Poisson draw by sequential inversion; intended for moderate means.
inline std::int64_t poisson(Engine& engine, double mean) {
  if (mean <= 0.0) return 0;
  const double u = uniform_open(engine);
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t k = 0;
  while (u > cdf && p > 0.0) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

}  // namespace floodrisk
