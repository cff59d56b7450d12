#include "xcrush/cipher.hpp"

#include <stdexcept>
#include <string>

namespace xcrush {

Block encrypt_block_rounds(const Block& p, const SubkeySchedule& sk, int rounds, bool whiten) {
    if (rounds < 1 || rounds > kRounds) {
        throw std::invalid_argument("rounds must be 1, 2 or 3, got " + std::to_string(rounds));
    }
    Word a = p[0], b = p[1], c = p[2], d = p[3];
    for (int r = 0; r < rounds; ++r) {
        const int j = r * 4;
        a = avalanche(a, b + c + d + sk[j + 0]);
        b = avalanche(b, a + c + d + sk[j + 1]);
        c = avalanche(c, a + b + d + sk[j + 2]);
        d = avalanche(d, a + b + c + sk[j + 3]);
    }
    if (whiten) {
        return {a ^ sk[12], b ^ sk[13], c ^ sk[14], d ^ sk[15]};
    }
    return {a, b, c, d};
}

} // namespace xcrush
