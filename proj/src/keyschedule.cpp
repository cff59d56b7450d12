#include "xcrush/keyschedule.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "xcrush/bytes.hpp"

namespace xcrush {

CipherKey::CipherKey(std::span<const Word> words) {
    if (words.size() < 2 || words.size() > 4) {
        throw std::invalid_argument("key must be 2, 3 or 4 words, got " +
                                    std::to_string(words.size()));
    }
    count_ = words.size();
    std::copy(words.begin(), words.end(), w_.begin());
}

CipherKey CipherKey::from_hex(std::string_view hex) {
    if (hex.size() != 32 && hex.size() != 48 && hex.size() != 64) {
        throw std::invalid_argument("key must be 32, 48 or 64 hex digits, got " +
                                    std::to_string(hex.size()));
    }
    const std::vector<std::uint8_t> bytes = xcrush::from_hex(hex);
    std::array<Word, 4> w{};
    const std::size_t count = bytes.size() / 8;
    for (std::size_t i = 0; i < count; ++i) {
        w[i] = load_be64(bytes.data() + 8 * i);
    }
    return CipherKey({w.data(), count});
}

PrngState PrngState::from_words(const std::array<Word, 5>& s) {
    if (s == std::array<Word, 5>{}) {
        throw std::invalid_argument("generator state must not be all zero (fixed point)");
    }
    return PrngState(s);
}

PrngState seed_from_key(const CipherKey& key) noexcept {
    std::array<Word, 5> s;
    s.fill(kSeedConstant);
    const auto words = key.words();
    std::copy(words.begin(), words.end(), s.begin());
    return PrngState(s);
}

std::pair<Word, PrngState> prng_next(const PrngState& s) noexcept {
    const auto& v = s.s_;
    const Word t = v[1];
    const Word y = avalanche(v[0], v[0] + t);
    return {y, PrngState({y, v[2], v[3], v[4], v[0]})};
}

SubkeySchedule expand_key(const CipherKey& key) {
    PrngState s = seed_from_key(key);
    for (int i = 0; i < 10; ++i) {
        s = prng_next(s).second;
    }
    SubkeySchedule sk;
    for (auto& subkey : sk) {
        auto [y, next] = prng_next(s);
        subkey = y;
        s = next;
    }
    return sk;
}

} // namespace xcrush
