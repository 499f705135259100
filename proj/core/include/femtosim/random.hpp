#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "femtosim/units.hpp"

// Seeded randomness for the simulator. Samplers are written out explicitly
// (instead of std:: distributions) so that a given seed produces the same
// draw sequence on every standard library, which the reproducibility
// contract of the engine depends on. Each Monte Carlo trial derives its own
// stream from (master_seed, stream_tag, index); streams never share state.

namespace femtosim {

using Rng = std::mt19937_64;

// splitmix64 step, used only to whiten seed material.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_tag,
                       std::uint64_t index) {
    return Rng(mix64(mix64(master_seed) ^ mix64(stream_tag * 0x9e3779b97f4a7c15ULL + index)));
}

// Uniform in [0, 1). One generator call.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller (cosine branch). Exactly two generator calls.
inline double standard_normal(Rng& rng) {
    const double u = 1.0 - uniform01(rng); // (0, 1]
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
}

// Poisson(mean) by Knuth's product method; draw count is mean-dependent but
// identical for identical (mean, stream) pairs.
inline int poisson(Rng& rng, double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform01(rng);
    } while (p > limit && k < 100000);
    return k - 1;
}

} // namespace femtosim
