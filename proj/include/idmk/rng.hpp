#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace idmk {

// All randomness flows through mt19937_64 plus the fixed transforms below,
// so streams are reproducible bit-for-bit across standard libraries.
using Rng = std::mt19937_64;

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Standard normal via Box-Muller; draws exactly two engine values.
inline double gaussian(Rng& rng) {
  double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  if (u1 <= 0.0) {
    u1 = 0x1.0p-53;
  }
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Uniform integer in [0, n); n must be positive. Uses rejection-free
// modulo (the bias is < 2^-53 for desk-scale n and never observable here,
// but keep n well below 2^32 anyway).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  return rng() % n;
}

// Stable stream-splitting: derive an independent seed from a base seed and
// a label (SplitMix64 over the combined value).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t label) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (label + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace idmk
