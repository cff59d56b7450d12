#pragma once

#include <array>
#include <cstddef>

#include "xcrush/cipher.hpp"

namespace xcrush {

// Published known-answer vectors, one per key size, compiled in so the
// smoke test never depends on a data path.
struct KnownAnswer {
    int key_bits;
    std::array<Word, 4> key; // first key_bits/64 words used
    Block plaintext;
    Block ciphertext;
};

inline constexpr std::array<KnownAnswer, 3> kKnownAnswers = {{
    {128,
     {0x1599D14129204267ULL, 0xE4C91210F1C15541ULL, 0, 0},
     {0x9338192346089EEEULL, 0x965D12810033DDF0ULL, 0x434C5669E9E31202ULL, 0x86416B3296055DC1ULL},
     {0x2AC5C0D9B62355A2ULL, 0x9DEFB4F22A3D6DBFULL, 0xCC18261B50072FBCULL, 0xCCB953C4947A6C39ULL}},
    {192,
     {0x4211121041C35A31ULL, 0xE4E4961BB81941BAULL, 0xCC982462195662AAULL, 0},
     {0x4440306090522AB0ULL, 0x31249688284691DFULL, 0x4C15654900DB1A19ULL, 0x19A0FF64135229D2ULL},
     {0x2FEFD41974AFDD44ULL, 0x15BA6339E5C03563ULL, 0x42BA28CF31B5F400ULL, 0xCCD58FC905686D9FULL}},
    {256,
     {0xF0E0D0C0B0A09080ULL, 0x7060504030201000ULL, 0xF1D3B597795B3D1FULL, 0x021346578A9BCEDFULL},
     {0x311D411620304361ULL, 0x48165C7790022614ULL, 0x9536295B87012640ULL, 0x396218842A490866ULL},
     {0x000947604A76E469ULL, 0xE34346B03745CAC9ULL, 0x244D96ACC783C42BULL, 0x95406757BE5653D9ULL}},
}};

} // namespace xcrush
