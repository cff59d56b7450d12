#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "xcrush/cipher.hpp"
#include "xcrush/keyschedule.hpp"
#include "xcrush/known_answers.hpp"
#include "xcrush/splitmix.hpp"

using namespace xcrush;

namespace {

CipherKey key_of(const KnownAnswer& ka) {
    return CipherKey({ka.key.data(), static_cast<std::size_t>(ka.key_bits / 64)});
}

SubkeySchedule random_schedule(SplitMix64& rng) {
    SubkeySchedule sk;
    for (auto& w : sk) w = rng.next();
    return sk;
}

} // namespace

TEST_CASE("known-answer vectors, encrypt direction") {
    for (const auto& ka : kKnownAnswers) {
        const SubkeySchedule sk = expand_key(key_of(ka));
        CHECK(encrypt_block(ka.plaintext, sk) == ka.ciphertext);
    }
}

TEST_CASE("known-answer vectors, decrypt direction") {
    for (const auto& ka : kKnownAnswers) {
        const SubkeySchedule sk = expand_key(key_of(ka));
        CHECK(decrypt_block(ka.ciphertext, sk) == ka.plaintext);
    }
}

TEST_CASE("128-bit vector with a frozen schedule isolates the round function") {
    // Schedule computed with the vendored reference implementation; a
    // mismatch here with passing schedule tests points at the rounds.
    const SubkeySchedule sk = {
        0xD6F739B2F9128BCDULL, 0x595DB5F56BC54132ULL, 0x98B61E30B0A9C027ULL,
        0x3C01391043919E94ULL, 0x7B1DCC11AA9D54D4ULL, 0xD64E4D3575CD32D1ULL,
        0xFD28302BAFD36A02ULL, 0x0414250AE4C19FA2ULL, 0x983453776110A60CULL,
        0x006CBEA0ECAB8673ULL, 0x9F29DD3C90FEDF5CULL, 0xFAA934744A2E8EDEULL,
        0xF2CD1BE6F23D7ABDULL, 0x168A8B17370CFB9DULL, 0x07533D6B15F6B4B6ULL,
        0x9D891915BA0B0257ULL};
    CHECK(encrypt_block(kKnownAnswers[0].plaintext, sk) == kKnownAnswers[0].ciphertext);
    CHECK(decrypt_block(kKnownAnswers[0].ciphertext, sk) == kKnownAnswers[0].plaintext);
}

TEST_CASE("decrypt_block inverts encrypt_block") {
    SplitMix64 rng{0xB10C};
    for (int i = 0; i < 20000; ++i) {
        const SubkeySchedule sk = random_schedule(rng);
        const Block p = {rng.next(), rng.next(), rng.next(), rng.next()};
        CHECK(decrypt_block(encrypt_block(p, sk), sk) == p);
    }
}

TEST_CASE("no ciphertext collisions under one key") {
    SplitMix64 rng{0xC011};
    const SubkeySchedule sk = random_schedule(rng);
    std::set<Block> seen;
    for (int i = 0; i < 100000; ++i) {
        const Block p = {rng.next(), rng.next(), rng.next(), rng.next()};
        seen.insert(encrypt_block(p, sk));
    }
    // Draws are unique with overwhelming probability, so outputs must be too.
    CHECK(seen.size() == 100000);
}

TEST_CASE("round-reduced variant agrees with the full cipher at 3 rounds") {
    SplitMix64 rng{0x0FF};
    for (int i = 0; i < 10000; ++i) {
        const SubkeySchedule sk = random_schedule(rng);
        const Block p = {rng.next(), rng.next(), rng.next(), rng.next()};
        CHECK(encrypt_block_rounds(p, sk, 3, true) == encrypt_block(p, sk));
    }
}

TEST_CASE("round-reduced traces") {
    // Intermediate states for the 128-bit vector, computed with the
    // vendored reference implementation.
    const SubkeySchedule sk = expand_key(key_of(kKnownAnswers[0]));
    const Block p = kKnownAnswers[0].plaintext;
    CHECK(encrypt_block_rounds(p, sk, 1, false) ==
          Block{0xBF37786ECA1A26F3ULL, 0xFBB5D878800281B5ULL, 0x7AAED8921D3130B4ULL,
                0x039356C7DF7B36F1ULL});
    CHECK(encrypt_block_rounds(p, sk, 2, false) ==
          Block{0x978B33290DA26A62ULL, 0xDE7D18831001E868ULL, 0x8B95598E5121238FULL,
                0x4A29086998126760ULL});
    CHECK(encrypt_block_rounds(p, sk, 3, false) ==
          Block{0xD808DB3F441E2F1FULL, 0x8B653FE51D319622ULL, 0xCB4B1B7045F19B0AULL,
                0x51304AD12E716E6EULL});
    CHECK(encrypt_block_rounds(p, sk, 3, true) == kKnownAnswers[0].ciphertext);
}

TEST_CASE("round-reduced variant rejects invalid round counts") {
    const SubkeySchedule sk{};
    const Block p{};
    CHECK_THROWS_AS(encrypt_block_rounds(p, sk, 0, true), std::invalid_argument);
    CHECK_THROWS_AS(encrypt_block_rounds(p, sk, 4, true), std::invalid_argument);
}

// Deliberately wrong variants; each must miss the published vectors.
// Guards the tests themselves against a broken build slipping through.
namespace mutants {

Block encrypt_swapped_round_keys(const Block& p, const SubkeySchedule& sk) {
    Word a = p[0], b = p[1], c = p[2], d = p[3];
    for (int r = kRounds - 1; r >= 0; --r) { // round-key groups in reverse
        const int j = r * 4;
        a = avalanche(a, b + c + d + sk[j + 0]);
        b = avalanche(b, a + c + d + sk[j + 1]);
        c = avalanche(c, a + b + d + sk[j + 2]);
        d = avalanche(d, a + b + c + sk[j + 3]);
    }
    return {a ^ sk[12], b ^ sk[13], c ^ sk[14], d ^ sk[15]};
}

Block encrypt_reversed_word_order(const Block& p, const SubkeySchedule& sk) {
    Word a = p[0], b = p[1], c = p[2], d = p[3];
    for (int r = 0; r < kRounds; ++r) {
        const int j = r * 4;
        d = avalanche(d, a + b + c + sk[j + 3]);
        c = avalanche(c, a + b + d + sk[j + 2]);
        b = avalanche(b, a + c + d + sk[j + 1]);
        a = avalanche(a, b + c + d + sk[j + 0]);
    }
    return {a ^ sk[12], b ^ sk[13], c ^ sk[14], d ^ sk[15]};
}

} // namespace mutants

TEST_CASE("mutated round structure fails the known-answer vectors") {
    for (const auto& ka : kKnownAnswers) {
        const SubkeySchedule sk = expand_key(key_of(ka));
        CHECK(mutants::encrypt_swapped_round_keys(ka.plaintext, sk) != ka.ciphertext);
        CHECK(mutants::encrypt_reversed_word_order(ka.plaintext, sk) != ka.ciphertext);
    }
}
