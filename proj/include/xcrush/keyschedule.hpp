#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>

#include "xcrush/cipher.hpp"
#include "xcrush/primitives.hpp"

namespace xcrush {

// Seed filler for unused state words: the leading decimal digits of the
// fractional part of sqrt(2). Nonzero, so no valid key can seed the
// generator with all zeros.
inline constexpr Word kSeedConstant = 4142135623730950488ULL;

// A 128-, 192- or 256-bit master key held as 2, 3 or 4 words.
class CipherKey {
public:
    // Throws std::invalid_argument unless given 2, 3 or 4 words.
    explicit CipherKey(std::span<const Word> words);

    // Parses 32/48/64 hex digits as 2/3/4 big-endian words, matching the
    // printed test-vector layout. Throws std::invalid_argument otherwise.
    static CipherKey from_hex(std::string_view hex);

    int bits() const noexcept { return static_cast<int>(count_) * 64; }
    std::size_t word_count() const noexcept { return count_; }
    std::span<const Word> words() const noexcept { return {w_.data(), count_}; }

    friend bool operator==(const CipherKey&, const CipherKey&) = default;

private:
    std::array<Word, 4> w_{};
    std::size_t count_ = 0;
};

// The 320-bit generator state. Only obtainable through seed_from_key or
// from_words; the all-zero state is a fixed point of the generator and is
// rejected at construction (valid seeds cannot produce it, since
// kSeedConstant is nonzero).
class PrngState {
public:
    // Throws std::invalid_argument on the all-zero state.
    static PrngState from_words(const std::array<Word, 5>& s);

    const std::array<Word, 5>& words() const noexcept { return s_; }

    friend bool operator==(const PrngState&, const PrngState&) = default;

private:
    explicit PrngState(const std::array<Word, 5>& s) noexcept : s_(s) {}
    std::array<Word, 5> s_{};

    friend PrngState seed_from_key(const CipherKey& key) noexcept;
    friend std::pair<Word, PrngState> prng_next(const PrngState& s) noexcept;
};

// Lays the key words into the first state slots and fills the rest with
// kSeedConstant: (K1,K2,C,C,C), (K1,K2,K3,C,C) or (K1,K2,K3,K4,C).
PrngState seed_from_key(const CipherKey& key) noexcept;

// One generator step: shifts the state words down, feeds the old first
// word back through the avalanche, and returns the new first word as
// output. Pure state transition; callers own their state.
std::pair<Word, PrngState> prng_next(const PrngState& s) noexcept;

// Seeds from the key, discards 10 warm-up outputs, then takes the next 16
// outputs as subkeys sk[0..15] in order.
SubkeySchedule expand_key(const CipherKey& key);

} // namespace xcrush
