#pragma once

#include <bit>
#include <cstdint>

namespace xcrush {

// The universal operand: a 64-bit word with wrapping add/multiply semantics.
using Word = std::uint64_t;

// Compresses a 64-bit word to a rotation distance in [0,63] through a
// shift-add/xor chain. For x < 64 every shifted term vanishes, so the
// function is the identity on [0,63].
inline constexpr unsigned c_function(Word x) noexcept {
    x = (x >> 32) + x;
    x = (x >> 11) ^ x;
    x = (x >> 9) + x;
    x = (x >> 6) + x;
    return static_cast<unsigned>(x & 0x3f);
}

// Keyed mixing step: add the addend, then rotate left by a distance
// compressed from the addend alone (not from the sum). Rotation by zero
// is the identity.
inline constexpr Word avalanche(Word x, Word a) noexcept {
    return std::rotl(x + a, static_cast<int>(c_function(a)));
}

// Exact inverse of avalanche for the same addend: rotate right, subtract.
inline constexpr Word unavalanche(Word y, Word a) noexcept {
    return std::rotr(y, static_cast<int>(c_function(a))) - a;
}

} // namespace xcrush
