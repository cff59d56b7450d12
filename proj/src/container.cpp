#include "xcrush/container.hpp"

#include <algorithm>
#include <cstring>

#include "xcrush/bulk.hpp"
#include "xcrush/bytes.hpp"

namespace xcrush {

namespace {

std::string hex_byte(std::uint8_t b) {
    return to_hex({&b, 1});
}

} // namespace

void ContainerHeader::serialize(std::uint8_t out[kSize]) const noexcept {
    std::memcpy(out, kMagic.data(), 4);
    out[4] = kVersion;
    out[5] = key_bytes;
    out[6] = static_cast<std::uint8_t>(mode);
    out[7] = 0x00; // reserved
    std::memcpy(out + 8, nonce.data(), nonce.size());
    store_be64(out + 24, payload_len);
}

ContainerHeader ContainerHeader::parse(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kSize) {
        throw LengthError("container: need at least " + std::to_string(kSize) +
                          " header bytes, got " + std::to_string(bytes.size()));
    }
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw FormatError("magic: expected \"XCRU\"");
    }
    if (bytes[4] != kVersion) {
        throw FormatError("version: expected 0x01, got 0x" + hex_byte(bytes[4]));
    }
    ContainerHeader h;
    h.key_bytes = bytes[5];
    if (h.key_bytes != 16 && h.key_bytes != 24 && h.key_bytes != 32) {
        throw FormatError("key_bytes: expected 16, 24 or 32, got " + std::to_string(h.key_bytes));
    }
    if (bytes[6] != 0x01 && bytes[6] != 0x02) {
        throw FormatError("mode: expected 0x01 (ecb) or 0x02 (ctr), got 0x" + hex_byte(bytes[6]));
    }
    h.mode = static_cast<Mode>(bytes[6]);
    std::copy_n(bytes.begin() + 8, h.nonce.size(), h.nonce.begin());
    h.payload_len = load_be64(bytes.data() + 24);
    return h;
}

std::vector<std::uint8_t> encrypt_stream(std::span<const std::uint8_t> plaintext,
                                         const CipherKey& key, Mode mode,
                                         const std::array<std::uint8_t, 16>& nonce) {
    const SubkeySchedule sk = expand_key(key);

    ContainerHeader h;
    h.key_bytes = static_cast<std::uint8_t>(key.bits() / 8);
    h.mode = mode;
    h.payload_len = plaintext.size();
    if (mode == Mode::Ctr) h.nonce = nonce;

    std::vector<std::uint8_t> out;
    if (mode == Mode::Ecb) {
        const std::size_t pad = kBlockBytes - plaintext.size() % kBlockBytes; // 1..32
        const std::size_t body = plaintext.size() + pad;
        out.resize(ContainerHeader::kSize + body);
        h.serialize(out.data());
        std::uint8_t* p = out.data() + ContainerHeader::kSize;
        std::copy(plaintext.begin(), plaintext.end(), p);
        std::fill_n(p + plaintext.size(), pad, static_cast<std::uint8_t>(pad));
        bulk::ecb_encrypt(p, p, body / kBlockBytes, sk);
    } else {
        out.resize(ContainerHeader::kSize + plaintext.size());
        h.serialize(out.data());
        bulk::ctr_xor(plaintext.data(), out.data() + ContainerHeader::kSize, plaintext.size(),
                      sk, nonce);
    }
    return out;
}

std::vector<std::uint8_t> decrypt_stream(std::span<const std::uint8_t> container,
                                         const CipherKey& key) {
    const ContainerHeader h = ContainerHeader::parse(container);
    if (h.key_bytes * 8 != key.bits()) {
        throw FormatError("key_bytes: container was written with a " +
                          std::to_string(h.key_bytes * 8) + "-bit key, got " +
                          std::to_string(key.bits()) + "-bit key");
    }
    const std::span<const std::uint8_t> body = container.subspan(ContainerHeader::kSize);
    const SubkeySchedule sk = expand_key(key);

    if (h.mode == Mode::Ctr) {
        if (body.size() != h.payload_len) {
            throw LengthError("payload_len: header promises " + std::to_string(h.payload_len) +
                              " body bytes, got " + std::to_string(body.size()));
        }
        std::vector<std::uint8_t> out(body.size());
        bulk::ctr_xor(body.data(), out.data(), body.size(), sk, h.nonce);
        return out;
    }

    // ECB: the padded body length is fully determined by payload_len.
    // Compared subtractively so an absurd payload_len cannot wrap the sum.
    const std::size_t expected_pad = kBlockBytes - h.payload_len % kBlockBytes;
    if (body.size() < expected_pad || body.size() - expected_pad != h.payload_len) {
        throw LengthError("payload_len: header promises " + std::to_string(h.payload_len) +
                          " payload bytes plus " + std::to_string(expected_pad) +
                          " pad bytes, got a " + std::to_string(body.size()) + "-byte body");
    }
    std::vector<std::uint8_t> out(body.size());
    bulk::ecb_decrypt(body.data(), out.data(), body.size() / kBlockBytes, sk);
    for (std::size_t i = out.size() - expected_pad; i < out.size(); ++i) {
        if (out[i] != expected_pad) {
            throw PaddingError("padding: expected pad byte 0x" +
                               hex_byte(static_cast<std::uint8_t>(expected_pad)) + ", got 0x" +
                               hex_byte(out[i]));
        }
    }
    out.resize(h.payload_len);
    return out;
}

} // namespace xcrush
