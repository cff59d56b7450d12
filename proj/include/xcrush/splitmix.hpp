#pragma once

#include <cstdint>

namespace xcrush {

// Deterministic utility generator for experiments, corpus generation and
// benchmark workloads. Kept separate from the cipher's own key-schedule
// generator so measurements never feed the instrument through the subject.
struct SplitMix64 {
    std::uint64_t state = 0;

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound) by rejection; bound must be nonzero.
    constexpr std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = bound * (~0ULL / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }
};

} // namespace xcrush
