#include "xcrush/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef __linux__
#include <sched.h>
#endif

#include "xcrush/bulk.hpp"
#include "xcrush/bytes.hpp"
#include "xcrush/keyschedule.hpp"
#include "xcrush/splitmix.hpp"

namespace xcrush {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMiB = 1024 * 1024;
constexpr Word kWorkloadSeed = 0x5DEECE66DULL;
// Fixed 256-bit benchmark key; any constant works, the workload just has to
// be identical from run to run.
constexpr std::array<Word, 4> kBenchKey = {0x0001020304050607ULL, 0x08090A0B0C0D0E0FULL,
                                           0x1011121314151617ULL, 0x18191A1B1C1D1E1FULL};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// FNV-1a over the buffer words; cheap, order-sensitive, and impossible for
// the compiler to hoist past the encryption it depends on.
std::uint64_t checksum64(const std::uint8_t* p, std::uint64_t n) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::uint64_t i = 0; i + 8 <= n; i += 8) {
        h = (h ^ load_be64(p + i)) * 0x100000001B3ULL;
    }
    return h;
}

bool pin_to_current_cpu() {
#ifdef __linux__
    const int cpu = sched_getcpu();
    if (cpu < 0) return false;
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(cpu, &set);
    return sched_setaffinity(0, sizeof set, &set) == 0;
#else
    return false;
#endif
}

double timer_resolution_seconds() {
    const auto t0 = Clock::now();
    auto t1 = t0;
    for (int i = 0; i < 1000000 && t1 == t0; ++i) t1 = Clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

BenchResult run_bench_impl(std::uint64_t buffer_bytes, int trials,
                           std::optional<double> cpu_hz, bool parallel) {
    if (buffer_bytes % kBlockBytes != 0) {
        throw std::invalid_argument("buffer size must be a multiple of 32 bytes, got " +
                                    std::to_string(buffer_bytes));
    }
    if (buffer_bytes < kMiB) {
        throw std::invalid_argument("buffer size must be at least 1 MiB, got " +
                                    std::to_string(buffer_bytes));
    }
    if (trials < 5) {
        throw std::invalid_argument("trials must be >= 5, got " + std::to_string(trials));
    }

    BenchResult res;
    res.bytes_processed = buffer_bytes;
    res.trials = trials;
    res.cpu_hz = cpu_hz;
    res.parallel = parallel;
    res.pinned = parallel ? false : pin_to_current_cpu();

    std::vector<std::uint8_t> src(buffer_bytes);
    SplitMix64 rng{kWorkloadSeed};
    for (std::uint64_t i = 0; i < buffer_bytes; i += 8) {
        store_be64(src.data() + i, rng.next());
    }
    const SubkeySchedule sk = expand_key(CipherKey(kBenchKey));
    const std::size_t nblocks = buffer_bytes / kBlockBytes;
    std::vector<std::uint8_t> dst(buffer_bytes);

    auto encrypt_once = [&] {
        if (parallel) {
            bulk::ecb_encrypt(src.data(), dst.data(), nblocks, sk);
        } else {
            bulk::ecb_encrypt_serial(src.data(), dst.data(), nblocks, sk);
        }
    };

    encrypt_once(); // warm-up, untimed
    const std::uint64_t want = checksum64(dst.data(), buffer_bytes);

    res.trial_seconds.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const auto t0 = Clock::now();
        encrypt_once();
        res.trial_seconds.push_back(seconds_since(t0));
        if (checksum64(dst.data(), buffer_bytes) != want) {
            throw std::runtime_error("benchmark workload produced unstable output");
        }
    }
    res.checksum = want;

    // Independent recomputation of the same workload, block by block.
    {
        std::vector<std::uint8_t> check(buffer_bytes);
        for (std::size_t b = 0; b < nblocks; ++b) {
            store_block_be(check.data() + b * kBlockBytes,
                           encrypt_block(load_block_be(src.data() + b * kBlockBytes), sk));
        }
        if (checksum64(check.data(), buffer_bytes) != want) {
            throw std::runtime_error("benchmark output disagrees with direct block encryption");
        }
    }

    res.median_seconds = median(res.trial_seconds);
    res.median_throughput = static_cast<double>(buffer_bytes) / res.median_seconds;
    const auto [lo, hi] = std::minmax_element(res.trial_seconds.begin(), res.trial_seconds.end());
    res.min_throughput = static_cast<double>(buffer_bytes) / *hi;
    res.max_throughput = static_cast<double>(buffer_bytes) / *lo;
    if (cpu_hz) {
        res.cycles_per_byte = *cpu_hz / res.median_throughput;
    }
    res.timer_warning = timer_resolution_seconds() > 0.01 * res.median_seconds;

    // Key expansion cost, measured apart from the bulk figure.
    {
        constexpr int kExpansions = 20000;
        std::vector<double> reps;
        for (int r = 0; r < 5; ++r) {
            SplitMix64 krng{static_cast<std::uint64_t>(r) + 1};
            Word sink = 0;
            const auto t0 = Clock::now();
            for (int i = 0; i < kExpansions; ++i) {
                const std::array<Word, 4> kw = {krng.next(), krng.next(), krng.next(),
                                                krng.next()};
                sink ^= expand_key(CipherKey(kw))[15];
            }
            const double dt = seconds_since(t0);
            reps.push_back(dt / kExpansions * 1e9);
            if (sink == 0x12345678) std::fputc(0, stderr); // keep the loop live
        }
        res.key_expansion_ns = median(reps);
    }

    return res;
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

} // namespace

BenchResult run_bench(std::uint64_t buffer_bytes, int trials, std::optional<double> cpu_hz) {
    return run_bench_impl(buffer_bytes, trials, cpu_hz, false);
}

BenchResult run_bench_parallel(std::uint64_t buffer_bytes, int trials,
                               std::optional<double> cpu_hz) {
    return run_bench_impl(buffer_bytes, trials, cpu_hz, true);
}

std::optional<double> detect_cpu_hz() {
#ifdef __linux__
    std::ifstream in("/proc/cpuinfo");
    std::string line;
    double best_mhz = 0.0;
    while (std::getline(in, line)) {
        if (line.rfind("cpu MHz", 0) != 0) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        try {
            best_mhz = std::max(best_mhz, std::stod(line.substr(colon + 1)));
        } catch (const std::exception&) {
        }
    }
    if (best_mhz > 0.0) return best_mhz * 1e6;
#endif
    return std::nullopt;
}

void BenchResult::write(std::ostream& os, ReportFormat f) const {
    if (f == ReportFormat::Text) {
        os << (parallel ? "bulk encryption benchmark (openmp kernel)\n"
                        : "bulk encryption benchmark (single-threaded)\n");
    }
    metric_line(os, f, "kernel", parallel ? "openmp" : "serial");
    metric_line(os, f, "bytes_per_trial", std::to_string(bytes_processed));
    metric_line(os, f, "trials", std::to_string(trials));
    metric_line(os, f, "median_seconds", fmt("%.6f", median_seconds));
    metric_line(os, f, "median_mib_per_s", fmt("%.2f", median_throughput / (1024.0 * 1024.0)));
    metric_line(os, f, "min_mib_per_s", fmt("%.2f", min_throughput / (1024.0 * 1024.0)));
    metric_line(os, f, "max_mib_per_s", fmt("%.2f", max_throughput / (1024.0 * 1024.0)));
    if (cpu_hz) {
        metric_line(os, f, "cpu_hz", fmt("%.0f", *cpu_hz));
    }
    if (cycles_per_byte) {
        metric_line(os, f, "cycles_per_byte", fmt("%.2f", *cycles_per_byte));
    }
    char cbuf[32];
    std::snprintf(cbuf, sizeof cbuf, "%016llx", static_cast<unsigned long long>(checksum));
    metric_line(os, f, "checksum", cbuf);
    metric_line(os, f, "key_expansion_ns", fmt("%.1f", key_expansion_ns));
    metric_line(os, f, "cpu_pinned", pinned ? "1" : "0");
    if (timer_warning) {
        metric_line(os, f, "timer_warning",
                    "timer resolution exceeds 1% of the trial duration");
    }
}

} // namespace xcrush
