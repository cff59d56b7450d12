#pragma once

#include <array>

#include "xcrush/primitives.hpp"

namespace xcrush {

// One 256-bit cipher block, word w[0] first.
using Block = std::array<Word, 4>;

// Sixteen subkeys: [0..11] are the three groups of four round keys,
// [12..15] are the whitening keys.
using SubkeySchedule = std::array<Word, 16>;

inline constexpr int kRounds = 3;
inline constexpr std::size_t kBlockBytes = 32;

// Three rounds of sequential avalanche updates followed by the whitening
// XOR. Within a round each word's addend uses the already-updated values
// of the other three words.
inline constexpr Block encrypt_block(const Block& p, const SubkeySchedule& sk) noexcept {
    Word a = p[0], b = p[1], c = p[2], d = p[3];
    for (int r = 0; r < kRounds; ++r) {
        const int j = r * 4;
        a = avalanche(a, b + c + d + sk[j + 0]);
        b = avalanche(b, a + c + d + sk[j + 1]);
        c = avalanche(c, a + b + d + sk[j + 2]);
        d = avalanche(d, a + b + c + sk[j + 3]);
    }
    return {a ^ sk[12], b ^ sk[13], c ^ sk[14], d ^ sk[15]};
}

// Strips the whitening XOR, then unwinds the rounds in reverse word order,
// reconstructing each addend from the words already recovered.
inline constexpr Block decrypt_block(const Block& c, const SubkeySchedule& sk) noexcept {
    Word t0 = c[0] ^ sk[12], t1 = c[1] ^ sk[13], t2 = c[2] ^ sk[14], t3 = c[3] ^ sk[15];
    for (int r = kRounds - 1; r >= 0; --r) {
        const int j = r * 4;
        t3 = unavalanche(t3, t0 + t1 + t2 + sk[j + 3]);
        t2 = unavalanche(t2, t0 + t1 + t3 + sk[j + 2]);
        t1 = unavalanche(t1, t0 + t2 + t3 + sk[j + 1]);
        t0 = unavalanche(t0, t1 + t2 + t3 + sk[j + 0]);
    }
    return {t0, t1, t2, t3};
}

// Round-reduced variant for diffusion analysis; not part of any encryption
// path. rounds must be 1, 2 or 3; the whitening XOR is applied only when
// whiten is set. With rounds = 3 and whiten set this equals encrypt_block.
Block encrypt_block_rounds(const Block& p, const SubkeySchedule& sk, int rounds, bool whiten);

} // namespace xcrush
