#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "xcrush/cipher.hpp"
#include "xcrush/keyschedule.hpp"
#include "xcrush/report.hpp"
#include "xcrush/splitmix.hpp"

namespace xcrush {

// Per-bit diffusion measurement of the (optionally round-reduced) cipher.
// matrix[i*256+j] is the fraction of trials in which flipping input bit i
// flipped output bit j; min/max count output-bit flips over all single-bit
// flip events. Bit i lives in word i/64, counted from the most significant
// bit, matching the big-endian byte layout.
struct AvalancheReport {
    int rounds = kRounds;
    bool whiten = true;
    std::uint64_t samples = 0;
    double mean_flip_fraction = 0.0;
    int min_flips = 0;
    int max_flips = 0;
    std::vector<double> matrix; // 256*256, row = input bit

    double matrix_at(int in_bit, int out_bit) const {
        return matrix[static_cast<std::size_t>(in_bit) * 256 + out_bit];
    }
    // Largest |entry - 0.5| over the whole matrix.
    double max_bias() const;

    void write(std::ostream& os, ReportFormat fmt) const;
};

// One random (256-bit key, plaintext) trial case, derived deterministically
// from (rng_seed, trial index) so fanning trials out over threads cannot
// change any result. Exposed for cross-validation in tests.
struct TrialCase {
    std::array<Word, 4> key;
    Block plaintext;
};
TrialCase draw_trial_case(Word rng_seed, std::uint64_t trial) noexcept;

// Runs `samples` trials; for each, flips every input bit in turn and
// records which output bits change. Deterministic given rng_seed; trials
// are fanned out across threads when OpenMP is available. samples >= 1.
AvalancheReport measure_avalanche(int rounds, bool whiten, std::uint64_t samples, Word rng_seed);

// Spread of c_function outputs over nearby inputs.
enum class Stride { Increment, RandomLowHamming };

struct DistributionReport {
    std::array<std::uint64_t, 64> histogram{};
    int distinct_values = 0;
    double chi_square = 0.0; // against a uniform spread over the 64 bins
    std::uint64_t count = 0;

    void write(std::ostream& os, ReportFormat fmt) const;
};

// Evaluates c_function over {base + i} (Increment) or over perturbations of
// base at Hamming distance 1..4 derived deterministically from (base, i)
// (RandomLowHamming). count >= 1.
DistributionReport measure_c_distribution(Word base, std::uint64_t count, Stride stride);

// Sanity statistics over the raw key-schedule generator stream: seed from
// the key, then take n successive outputs (no warm-up discard).
struct PrngSanityReport {
    std::uint64_t n = 0;
    double one_bit_fraction = 0.0;
    double serial_correlation = 0.0; // lag-1 Pearson estimate on [0,1)-scaled words
    double byte_chi_square = 0.0;    // 64-bin histogram of byte values >> 2
    bool monobit_in_bounds = false;  // one_bit_fraction within [0.49, 0.51]

    void write(std::ostream& os, ReportFormat fmt) const;
};

// Throws std::invalid_argument when n < 1000.
PrngSanityReport prng_sanity(const CipherKey& seed_key, std::uint64_t n);

} // namespace xcrush
