#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace somimpute {

/// All stochastic steps draw from a 64-bit Mersenne Twister. The helpers below are
/// written out instead of using the <random> distributions, whose output is not
/// specified across standard library implementations.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection sampling; n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return static_cast<std::size_t>(x % bound);
    }
}

/// Uniform real in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// SplitMix64 finalizer, used to derive well-spread sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Engine for code-vector initialization.
inline Rng init_engine(std::uint64_t seed) { return Rng(seed); }
/// Engine for row presentation order during training.
inline Rng sampling_engine(std::uint64_t seed) { return Rng(seed ^ 0x9E3779B97F4A7C15ULL); }

}  // namespace somimpute
