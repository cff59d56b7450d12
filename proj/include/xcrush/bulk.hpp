#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "xcrush/cipher.hpp"

namespace xcrush::bulk {

// Bulk kernels over byte buffers. The serial variants define the output
// contract; the unsuffixed variants run the same work across OpenMP
// threads at block granularity and must produce byte-identical output.
// In-place operation (out == in) is allowed for all of them.

// ECB: nblocks independent 32-byte blocks.
void ecb_encrypt_serial(const std::uint8_t* in, std::uint8_t* out, std::size_t nblocks,
                        const SubkeySchedule& sk) noexcept;
void ecb_decrypt_serial(const std::uint8_t* in, std::uint8_t* out, std::size_t nblocks,
                        const SubkeySchedule& sk) noexcept;
void ecb_encrypt(const std::uint8_t* in, std::uint8_t* out, std::size_t nblocks,
                 const SubkeySchedule& sk) noexcept;
void ecb_decrypt(const std::uint8_t* in, std::uint8_t* out, std::size_t nblocks,
                 const SubkeySchedule& sk) noexcept;

// CTR: out = in XOR keystream, where keystream block i is the encryption
// of the nonce block (nonce in the last 16 bytes, zeros elsewhere) with
// the big-endian block counter i XORed in. Handles a trailing partial
// block; nbytes need not be a multiple of 32.
void ctr_xor_serial(const std::uint8_t* in, std::uint8_t* out, std::size_t nbytes,
                    const SubkeySchedule& sk, const std::array<std::uint8_t, 16>& nonce) noexcept;
void ctr_xor(const std::uint8_t* in, std::uint8_t* out, std::size_t nbytes,
             const SubkeySchedule& sk, const std::array<std::uint8_t, 16>& nonce) noexcept;

// True when the unsuffixed kernels can actually fan out.
bool openmp_enabled() noexcept;

} // namespace xcrush::bulk
