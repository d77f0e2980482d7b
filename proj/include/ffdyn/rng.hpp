#pragma once

#include <cstdint>

namespace ffdyn {

// splitmix64 (Steele, Lea, Vigna). One independent stream per (seed, counter)
// pair, so parallel consumers never share state and results do not depend on
// scheduling order.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t counter) {
    SplitMix64 mixer{seed + 0x9E3779B97F4A7C15ULL * (counter + 1)};
    return SplitMix64{mixer.next()};
}

/// Unbiased uniform draw from [0, n); n >= 1.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t n) {
    const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        std::uint64_t r = rng.next();
        if (r >= min) return r % n;
    }
}

}  // namespace ffdyn
