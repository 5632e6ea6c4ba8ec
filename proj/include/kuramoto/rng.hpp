#pragma once

#include <cstdint>

namespace kuramoto {

/// splitmix64: the 64-bit generator used for every seeded stream so that runs
/// are reproducible across implementations. state advances by the golden
/// ratio increment; output is the finalized mix of the new state.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Independent child stream (split by drawing a fresh seed).
    SplitMix64 split() { return SplitMix64(next()); }
};

} // namespace kuramoto
