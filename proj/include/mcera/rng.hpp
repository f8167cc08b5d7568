#pragma once

#include <cstdint>
#include <random>

// Deterministic randomness utilities.
//
// All stochastic components (resampling, sign matrices, synthetic data) draw
// from std::mt19937_64, whose output stream is fully specified by the
// standard, so identical seeds give identical results on every platform.
// Index/variate mapping is done here by hand because the std distribution
// templates are implementation-defined.

namespace mcera {

// splitmix64 step; used to derive independent sub-seeds from one user seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream-separated seed: derive_seed(s, k) are independent for distinct k.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x632be59bd9b4e019ULL * (stream + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

// Uniform integer in [0, bound) via rejection below the largest multiple of
// bound; unbiased and platform-stable. bound must be nonzero.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = (0ULL - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = gen();
    if (r >= limit) return r % bound;
  }
}

// Uniform double in [0, 1) with 53 random bits; exact dyadic arithmetic.
inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace mcera
