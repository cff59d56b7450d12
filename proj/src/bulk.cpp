#include "xcrush/bulk.hpp"

#include <cstring>

#include "xcrush/bytes.hpp"

namespace xcrush::bulk {

namespace {

// Below this block count the thread fan-out costs more than it saves.
constexpr std::size_t kParallelThreshold = 256;

inline Block ctr_keystream_block(std::uint64_t i, const SubkeySchedule& sk,
                                 Word nonce_hi, Word nonce_lo) noexcept {
    // Nonce sits in the last 16 bytes of the zero-padded input block; the
    // big-endian counter value lands in the final 8 bytes, so it folds into
    // the low word.
    return encrypt_block({0, 0, nonce_hi, nonce_lo ^ i}, sk);
}

inline void ctr_chunk(const std::uint8_t* in, std::uint8_t* out, std::size_t block,
                      std::size_t len, const SubkeySchedule& sk, Word nonce_hi,
                      Word nonce_lo) noexcept {
    std::uint8_t ks[kBlockBytes];
    store_block_be(ks, ctr_keystream_block(block, sk, nonce_hi, nonce_lo));
    for (std::size_t i = 0; i < len; ++i) {
        out[i] = static_cast<std::uint8_t>(in[i] ^ ks[i]);
    }
}

} // namespace

void ecb_encrypt_serial(const std::uint8_t* in, std::uint8_t* out, std::size_t nblocks,
                        const SubkeySchedule& sk) noexcept {
    for (std::size_t b = 0; b < nblocks; ++b) {
        store_block_be(out + b * kBlockBytes, encrypt_block(load_block_be(in + b * kBlockBytes), sk));
    }
}

void ecb_decrypt_serial(const std::uint8_t* in, std::uint8_t* out, std::size_t nblocks,
                        const SubkeySchedule& sk) noexcept {
    for (std::size_t b = 0; b < nblocks; ++b) {
        store_block_be(out + b * kBlockBytes, decrypt_block(load_block_be(in + b * kBlockBytes), sk));
    }
}

void ctr_xor_serial(const std::uint8_t* in, std::uint8_t* out, std::size_t nbytes,
                    const SubkeySchedule& sk, const std::array<std::uint8_t, 16>& nonce) noexcept {
    const Word hi = load_be64(nonce.data());
    const Word lo = load_be64(nonce.data() + 8);
    const std::size_t full = nbytes / kBlockBytes;
    for (std::size_t b = 0; b < full; ++b) {
        ctr_chunk(in + b * kBlockBytes, out + b * kBlockBytes, b, kBlockBytes, sk, hi, lo);
    }
    if (const std::size_t tail = nbytes % kBlockBytes) {
        ctr_chunk(in + full * kBlockBytes, out + full * kBlockBytes, full, tail, sk, hi, lo);
    }
}

bool openmp_enabled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void ecb_encrypt(const std::uint8_t* in, std::uint8_t* out, std::size_t nblocks,
                 const SubkeySchedule& sk) noexcept {
#ifdef _OPENMP
    if (nblocks >= kParallelThreshold) {
        const auto n = static_cast<std::int64_t>(nblocks);
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < n; ++b) {
            store_block_be(out + b * kBlockBytes,
                           encrypt_block(load_block_be(in + b * kBlockBytes), sk));
        }
        return;
    }
#endif
    ecb_encrypt_serial(in, out, nblocks, sk);
}

void ecb_decrypt(const std::uint8_t* in, std::uint8_t* out, std::size_t nblocks,
                 const SubkeySchedule& sk) noexcept {
#ifdef _OPENMP
    if (nblocks >= kParallelThreshold) {
        const auto n = static_cast<std::int64_t>(nblocks);
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < n; ++b) {
            store_block_be(out + b * kBlockBytes,
                           decrypt_block(load_block_be(in + b * kBlockBytes), sk));
        }
        return;
    }
#endif
    ecb_decrypt_serial(in, out, nblocks, sk);
}

void ctr_xor(const std::uint8_t* in, std::uint8_t* out, std::size_t nbytes,
             const SubkeySchedule& sk, const std::array<std::uint8_t, 16>& nonce) noexcept {
#ifdef _OPENMP
    if (nbytes / kBlockBytes >= kParallelThreshold) {
        const Word hi = load_be64(nonce.data());
        const Word lo = load_be64(nonce.data() + 8);
        const auto full = static_cast<std::int64_t>(nbytes / kBlockBytes);
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < full; ++b) {
            ctr_chunk(in + b * kBlockBytes, out + b * kBlockBytes, static_cast<std::size_t>(b),
                      kBlockBytes, sk, hi, lo);
        }
        if (const std::size_t tail = nbytes % kBlockBytes) {
            const auto off = static_cast<std::size_t>(full) * kBlockBytes;
            ctr_chunk(in + off, out + off, static_cast<std::size_t>(full), tail, sk, hi, lo);
        }
        return;
    }
#endif
    ctr_xor_serial(in, out, nbytes, sk, nonce);
}

} // namespace xcrush::bulk
