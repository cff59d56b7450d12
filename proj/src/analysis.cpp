#include "xcrush/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xcrush {

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

} // namespace

TrialCase draw_trial_case(Word rng_seed, std::uint64_t trial) noexcept {
    // One private stream per trial, so the schedule of threads over trials
    // cannot influence any draw.
    SplitMix64 rng{rng_seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1))};
    TrialCase tc;
    for (auto& w : tc.key) w = rng.next();
    for (auto& w : tc.plaintext) w = rng.next();
    return tc;
}

double AvalancheReport::max_bias() const {
    double worst = 0.0;
    for (double e : matrix) worst = std::max(worst, std::abs(e - 0.5));
    return worst;
}

AvalancheReport measure_avalanche(int rounds, bool whiten, std::uint64_t samples, Word rng_seed) {
    if (samples < 1) {
        throw std::invalid_argument("samples must be >= 1");
    }
    if (rounds < 1 || rounds > kRounds) {
        throw std::invalid_argument("rounds must be 1, 2 or 3, got " + std::to_string(rounds));
    }
    const bool full_cipher = (rounds == kRounds) && whiten;

    std::vector<std::uint64_t> counts(256 * 256, 0);
    int min_flips = 257;
    int max_flips = -1;

#ifdef _OPENMP
#pragma omp parallel reduction(min : min_flips) reduction(max : max_flips)
#endif
    {
        std::vector<std::uint64_t> local(256 * 256, 0);
        const auto n = static_cast<std::int64_t>(samples);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t t = 0; t < n; ++t) {
            const TrialCase tc = draw_trial_case(rng_seed, static_cast<std::uint64_t>(t));
            const SubkeySchedule sk = expand_key(CipherKey(tc.key));
            const Block base = full_cipher ? encrypt_block(tc.plaintext, sk)
                                           : encrypt_block_rounds(tc.plaintext, sk, rounds, whiten);
            for (int bit = 0; bit < 256; ++bit) {
                Block p = tc.plaintext;
                p[bit >> 6] ^= Word{1} << (63 - (bit & 63));
                const Block out = full_cipher ? encrypt_block(p, sk)
                                              : encrypt_block_rounds(p, sk, rounds, whiten);
                int flips = 0;
                for (int w = 0; w < 4; ++w) {
                    const Word diff = base[w] ^ out[w];
                    flips += std::popcount(diff);
                    for (int k = 0; k < 64; ++k) {
                        local[static_cast<std::size_t>(bit) * 256 + w * 64 + k] +=
                            (diff >> (63 - k)) & 1;
                    }
                }
                min_flips = std::min(min_flips, flips);
                max_flips = std::max(max_flips, flips);
            }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
    }

    AvalancheReport rep;
    rep.rounds = rounds;
    rep.whiten = whiten;
    rep.samples = samples;
    rep.min_flips = min_flips;
    rep.max_flips = max_flips;
    rep.matrix.resize(counts.size());
    std::uint64_t grand = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        grand += counts[i];
        rep.matrix[i] = static_cast<double>(counts[i]) / static_cast<double>(samples);
    }
    rep.mean_flip_fraction =
        static_cast<double>(grand) / (static_cast<double>(samples) * 256.0 * 256.0);
    return rep;
}

void AvalancheReport::write(std::ostream& os, ReportFormat f) const {
    if (f == ReportFormat::Text) os << "avalanche measurement\n";
    metric_line(os, f, "rounds", std::to_string(rounds));
    metric_line(os, f, "whiten", whiten ? "1" : "0");
    metric_line(os, f, "samples", std::to_string(samples));
    metric_line(os, f, "mean_flip_fraction", fmt("%.6f", mean_flip_fraction));
    metric_line(os, f, "min_flips", std::to_string(min_flips));
    metric_line(os, f, "max_flips", std::to_string(max_flips));
    metric_line(os, f, "matrix_max_bias", fmt("%.6f", max_bias()));
}

DistributionReport measure_c_distribution(Word base, std::uint64_t count, Stride stride) {
    if (count < 1) {
        throw std::invalid_argument("count must be >= 1");
    }
    DistributionReport rep;
    rep.count = count;
    for (std::uint64_t i = 0; i < count; ++i) {
        Word x;
        if (stride == Stride::Increment) {
            x = base + i;
        } else {
            // Flip 1..4 bit positions derived from (base, i); i = 0 keeps
            // the base itself so the reference point is always sampled.
            x = base;
            if (i != 0) {
                SplitMix64 rng{base ^ (0xD1B54A32D192ED03ULL * i)};
                const int flips = 1 + static_cast<int>(rng.next_below(4));
                for (int k = 0; k < flips; ++k) {
                    x ^= Word{1} << rng.next_below(64);
                }
            }
        }
        ++rep.histogram[c_function(x)];
    }
    const double expected = static_cast<double>(count) / 64.0;
    for (const std::uint64_t h : rep.histogram) {
        if (h != 0) ++rep.distinct_values;
        const double d = static_cast<double>(h) - expected;
        rep.chi_square += d * d / expected;
    }
    return rep;
}

void DistributionReport::write(std::ostream& os, ReportFormat f) const {
    if (f == ReportFormat::Text) os << "rotation-distance distribution\n";
    metric_line(os, f, "count", std::to_string(count));
    metric_line(os, f, "distinct_values", std::to_string(distinct_values));
    metric_line(os, f, "chi_square", fmt("%.3f", chi_square));
    std::string h;
    for (std::size_t i = 0; i < histogram.size(); ++i) {
        if (i) h += ' ';
        h += std::to_string(histogram[i]);
    }
    metric_line(os, f, "histogram", h);
}

PrngSanityReport prng_sanity(const CipherKey& seed_key, std::uint64_t n) {
    if (n < 1000) {
        throw std::invalid_argument("n must be >= 1000, got " + std::to_string(n));
    }
    PrngSanityReport rep;
    rep.n = n;

    PrngState s = seed_from_key(seed_key);
    std::uint64_t ones = 0;
    std::array<std::uint64_t, 64> bins{};
    // Accumulators for the lag-1 Pearson estimate on words scaled to [0,1).
    double sum = 0, sumsq = 0, cross = 0;
    double prev = 0;
    bool have_prev = false;
    constexpr double kScale = 1.0 / 18446744073709551616.0; // 2^-64

    for (std::uint64_t i = 0; i < n; ++i) {
        auto [y, next] = prng_next(s);
        s = next;
        ones += static_cast<std::uint64_t>(std::popcount(y));
        for (int b = 0; b < 8; ++b) {
            bins[((y >> (8 * b)) & 0xff) >> 2]++;
        }
        const double x = static_cast<double>(y) * kScale;
        sum += x;
        sumsq += x * x;
        if (have_prev) cross += prev * x;
        prev = x;
        have_prev = true;
    }

    rep.one_bit_fraction = static_cast<double>(ones) / (64.0 * static_cast<double>(n));
    rep.monobit_in_bounds = rep.one_bit_fraction >= 0.49 && rep.one_bit_fraction <= 0.51;

    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = sumsq / nn - mean * mean;
    rep.serial_correlation =
        var > 0 ? (cross / (nn - 1) - mean * mean) / var : 0.0;

    const double expected = 8.0 * nn / 64.0;
    for (const std::uint64_t h : bins) {
        const double d = static_cast<double>(h) - expected;
        rep.byte_chi_square += d * d / expected;
    }
    return rep;
}

void PrngSanityReport::write(std::ostream& os, ReportFormat f) const {
    if (f == ReportFormat::Text) os << "key-schedule generator sanity\n";
    metric_line(os, f, "n", std::to_string(n));
    metric_line(os, f, "one_bit_fraction", fmt("%.6f", one_bit_fraction));
    metric_line(os, f, "monobit_in_bounds", monobit_in_bounds ? "1" : "0");
    metric_line(os, f, "serial_correlation", fmt("%.6f", serial_correlation));
    metric_line(os, f, "byte_chi_square_64bin", fmt("%.3f", byte_chi_square));
}

} // namespace xcrush
