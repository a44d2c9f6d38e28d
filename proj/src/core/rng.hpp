#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace biphoton {

// Reproducibility requires fully specified draws: mt19937_64 is pinned by
// the standard, and the uniform/gaussian/poisson transforms below are
// spelled out here instead of using the implementation-defined
// std::*_distribution classes.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream/chunk seed derivation: one master seed, one 64-bit stream id.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(~stream));
}

inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53; // [0, 1)
}

inline double uniform_open(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 12) + 0.5) * 0x1.0p-52; // (0, 1)
}

// Box-Muller; consumes exactly two draws.
inline double gaussian(std::mt19937_64& gen) {
    const double u = uniform_open(gen);
    const double v = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

// Exact Poisson sampling; large means are split into exact partial sums
// so the inversion loop never underflows.
inline std::uint64_t poisson(std::mt19937_64& gen, double mean) {
    std::uint64_t total = 0;
    while (mean > 30.0) {
        const double part = 30.0;
        const double limit = std::exp(-part);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform_open(gen);
        } while (p > limit);
        total += k - 1;
        mean -= part;
    }
    if (mean > 0.0) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform_open(gen);
        } while (p > limit);
        total += k - 1;
    }
    return total;
}

} // namespace biphoton
