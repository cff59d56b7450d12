#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xcrush/cipher.hpp"

namespace xcrush {

// Byte/word mapping used everywhere bytes meet the cipher: 8 consecutive
// bytes form one big-endian word, 32 consecutive bytes form one block with
// w[0] first. File bytes therefore match the printed hex of the test
// vectors digit for digit.

inline constexpr Word load_be64(const std::uint8_t* p) noexcept {
    Word w = 0;
    for (int i = 0; i < 8; ++i) w = (w << 8) | p[i];
    return w;
}

inline constexpr void store_be64(std::uint8_t* p, Word w) noexcept {
    for (int i = 7; i >= 0; --i) {
        p[i] = static_cast<std::uint8_t>(w & 0xff);
        w >>= 8;
    }
}

inline constexpr Block load_block_be(const std::uint8_t* p) noexcept {
    return {load_be64(p), load_be64(p + 8), load_be64(p + 16), load_be64(p + 24)};
}

inline constexpr void store_block_be(std::uint8_t* p, const Block& b) noexcept {
    for (int i = 0; i < 4; ++i) store_be64(p + 8 * i, b[i]);
}

// Lowercase hex codec. from_hex throws std::invalid_argument naming the
// offending character or an odd length.
std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

std::string word_to_hex(Word w);

} // namespace xcrush
