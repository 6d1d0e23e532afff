#pragma once

#include <cstdint>

namespace zeck {

// SplitMix64 (Steele, Lea, Vigna; public-domain reference constants).
// Chosen over std::mt19937_64 because experiments need one independent
// stream per sample index: stream i is keyed by mixing the user seed with
// the index, so any worker can produce sample i without replaying samples
// 0..i-1. That makes every sampled statistic independent of worker count.
class splitmix64 {
public:
    explicit splitmix64(std::uint64_t state) noexcept : state_(state) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Finalizer of the same generator, used as a key-mixing function.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-sample substream: a fresh SplitMix64 whose initial state depends only
// on (seed, index). Indices are used once per drawn sample.
inline splitmix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(mix64(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1))));
}

} // namespace zeck
