#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "xcrush/report.hpp"

namespace xcrush {

struct BenchResult {
    std::uint64_t bytes_processed = 0; // per trial
    int trials = 0;
    std::vector<double> trial_seconds;      // timed trials, warm-up excluded
    double median_seconds = 0.0;            // median trial
    double median_throughput = 0.0;         // bytes/second of the median trial
    double min_throughput = 0.0;
    double max_throughput = 0.0;
    std::optional<double> cpu_hz;           // as supplied
    std::optional<double> cycles_per_byte;  // cpu_hz / median_throughput
    std::uint64_t checksum = 0;             // stable across trials by construction
    double key_expansion_ns = 0.0;          // median cost of one expand_key, reported separately
    bool timer_warning = false;             // timer resolution exceeded 1% of the median trial
    bool pinned = false;                    // thread was pinned to one logical CPU
    bool parallel = false;                  // measured the OpenMP kernel instead of the serial one

    void write(std::ostream& os, ReportFormat fmt) const;
};

// Single-threaded bulk ECB throughput: fills buffer_bytes with a fixed
// pseudo-random workload, expands a fixed key once, runs one discarded
// warm-up plus `trials` timed encryptions, and reports the median. A
// checksum over the output guards the measured work against elimination
// and is re-verified against an independently computed encryption.
// buffer_bytes must be a multiple of 32 and at least 1 MiB; trials >= 5;
// violations throw std::invalid_argument.
BenchResult run_bench(std::uint64_t buffer_bytes, int trials, std::optional<double> cpu_hz);

// Same protocol over the OpenMP ECB kernel, for comparing the two.
BenchResult run_bench_parallel(std::uint64_t buffer_bytes, int trials,
                               std::optional<double> cpu_hz);

// Nominal CPU frequency from the platform (best effort), for cycles/byte
// estimates when the caller has nothing better.
std::optional<double> detect_cpu_hz();

} // namespace xcrush
