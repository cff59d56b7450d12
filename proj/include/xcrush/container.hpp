#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "xcrush/keyschedule.hpp"

namespace xcrush {

enum class Mode : std::uint8_t { Ecb = 0x01, Ctr = 0x02 };

// Malformed header or a field that contradicts the supplied key.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ECB body whose decryption does not carry the expected padding.
class PaddingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Container or body shorter/longer than the header promises.
class LengthError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 32-byte self-describing file header, versioned and bit-exact:
//   magic "XCRU" | version 0x01 | key bytes (16/24/32) | mode | reserved 0x00
//   | 16-byte nonce (zero for ECB) | payload length, 8 bytes big-endian.
struct ContainerHeader {
    static constexpr std::array<std::uint8_t, 4> kMagic = {'X', 'C', 'R', 'U'};
    static constexpr std::uint8_t kVersion = 0x01;
    static constexpr std::size_t kSize = 32;

    std::uint8_t key_bytes = 0;
    Mode mode = Mode::Ecb;
    std::array<std::uint8_t, 16> nonce{};
    std::uint64_t payload_len = 0;

    void serialize(std::uint8_t out[kSize]) const noexcept;

    // Throws LengthError when fewer than kSize bytes are given and
    // FormatError on bad magic, version, key size or mode; the message
    // names the offending field. The reserved byte is ignored on read.
    static ContainerHeader parse(std::span<const std::uint8_t> bytes);
};

// Encrypts a byte sequence into a container. ECB pads the plaintext to a
// whole number of blocks (pad byte = pad length, 1..32, so a multiple-of-32
// input gains a full pad block); CTR XORs a keystream and needs no padding.
// The nonce is ignored for ECB and recorded in the header for CTR.
std::vector<std::uint8_t> encrypt_stream(std::span<const std::uint8_t> plaintext,
                                         const CipherKey& key, Mode mode,
                                         const std::array<std::uint8_t, 16>& nonce = {});

// Inverse of encrypt_stream. Throws FormatError, LengthError or
// PaddingError as described above; each message names the field at fault.
std::vector<std::uint8_t> decrypt_stream(std::span<const std::uint8_t> container,
                                         const CipherKey& key);

} // namespace xcrush
