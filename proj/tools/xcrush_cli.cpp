// Command-line front end: encrypt, decrypt, keygen, vectors, analyze, bench.
// Exit codes: 0 success, 1 known-answer mismatch, 2 invalid arguments,
// 3 I/O or entropy failure, 4 container format/padding error on decrypt.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xcrush/analysis.hpp"
#include "xcrush/bench.hpp"
#include "xcrush/bulk.hpp"
#include "xcrush/bytes.hpp"
#include "xcrush/container.hpp"
#include "xcrush/keyschedule.hpp"
#include "xcrush/known_answers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_all(const std::string& path) {
    if (path == "-") {
        std::vector<std::uint8_t> data;
        char buf[1 << 16];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, stdin)) > 0) {
            data.insert(data.end(), buf, buf + n);
        }
        if (std::ferror(stdin)) throw IoError("failed to read standard input");
        return data;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input file: " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed while reading: " + path);
    return data;
}

void write_all(const std::string& path, const std::vector<std::uint8_t>& data) {
    if (path == "-") {
        if (!data.empty() && std::fwrite(data.data(), 1, data.size(), stdout) != data.size()) {
            throw IoError("failed to write standard output");
        }
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("failed while writing: " + path);
}

std::string trimmed(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), is_space));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), is_space).base(), s.end());
    return s;
}

xcrush::CipherKey load_key(const std::string& key_hex, const std::string& key_file) {
    if (!key_hex.empty()) {
        std::cerr << "note: keys passed on the command line may persist in shell history; "
                     "prefer --key-file\n";
        return xcrush::CipherKey::from_hex(key_hex);
    }
    std::ifstream in(key_file);
    if (!in) throw IoError("cannot open key file: " + key_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return xcrush::CipherKey::from_hex(trimmed(ss.str()));
}

void print_security_note() {
    std::cerr << "warning: No security claims are made for this cipher; "
                 "do not protect sensitive data with it\n";
}

std::array<std::uint8_t, 16> random_nonce() {
    std::random_device rd;
    std::array<std::uint8_t, 16> nonce;
    for (std::size_t i = 0; i < nonce.size(); i += 4) {
        const std::uint32_t v = rd();
        nonce[i] = static_cast<std::uint8_t>(v >> 24);
        nonce[i + 1] = static_cast<std::uint8_t>(v >> 16);
        nonce[i + 2] = static_cast<std::uint8_t>(v >> 8);
        nonce[i + 3] = static_cast<std::uint8_t>(v);
    }
    return nonce;
}

xcrush::ReportFormat parse_format(const std::string& s) {
    if (s == "kv") return xcrush::ReportFormat::KeyValue;
    if (s == "text") return xcrush::ReportFormat::Text;
    throw CLI::ValidationError("--format", "expected 'text' or 'kv'");
}

int run_vectors() {
    using namespace xcrush;
    bool all_ok = true;
    for (const KnownAnswer& ka : kKnownAnswers) {
        const CipherKey key({ka.key.data(), static_cast<std::size_t>(ka.key_bits / 64)});
        const SubkeySchedule sk = expand_key(key);

        const Block got_ct = encrypt_block(ka.plaintext, sk);
        const bool enc_ok = got_ct == ka.ciphertext;
        std::cout << (enc_ok ? "PASS" : "FAIL") << " " << ka.key_bits << "-bit encrypt\n";
        if (!enc_ok) {
            for (int w = 0; w < 4; ++w) {
                if (got_ct[w] != ka.ciphertext[w]) {
                    std::cout << "  word " << w + 1 << ": expected " << word_to_hex(ka.ciphertext[w])
                              << " got " << word_to_hex(got_ct[w]) << "\n";
                }
            }
        }

        const Block got_pt = decrypt_block(ka.ciphertext, sk);
        const bool dec_ok = got_pt == ka.plaintext;
        std::cout << (dec_ok ? "PASS" : "FAIL") << " " << ka.key_bits << "-bit decrypt\n";
        if (!dec_ok) {
            for (int w = 0; w < 4; ++w) {
                if (got_pt[w] != ka.plaintext[w]) {
                    std::cout << "  word " << w + 1 << ": expected " << word_to_hex(ka.plaintext[w])
                              << " got " << word_to_hex(got_pt[w]) << "\n";
                }
            }
        }
        all_ok = all_ok && enc_ok && dec_ok;
    }
    return all_ok ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"XCRUSH block cipher tool (256-bit blocks, 128/192/256-bit keys)"};
    app.require_subcommand(1);

    // encrypt / decrypt
    std::string in_path, out_path, key_hex, key_file, mode_name = "ctr", nonce_hex;
    auto add_key_opts = [&](CLI::App* cmd) {
        auto* k = cmd->add_option("--key", key_hex, "key as 32/48/64 hex digits");
        auto* kf = cmd->add_option("--key-file", key_file, "file containing the hex key");
        k->excludes(kf);
        kf->excludes(k);
    };

    auto* enc = app.add_subcommand("encrypt", "encrypt a file into a container");
    enc->add_option("-i,--in", in_path, "input file ('-' for stdin)")->required();
    enc->add_option("-o,--out", out_path, "output file ('-' for stdout)")->required();
    add_key_opts(enc);
    enc->add_option("--mode", mode_name, "ecb or ctr")->check(CLI::IsMember({"ecb", "ctr"}));
    enc->add_option("--nonce", nonce_hex, "CTR nonce as 32 hex digits (random when omitted)");

    auto* dec = app.add_subcommand("decrypt", "decrypt a container back to bytes");
    dec->add_option("-i,--in", in_path, "input file ('-' for stdin)")->required();
    dec->add_option("-o,--out", out_path, "output file ('-' for stdout)")->required();
    add_key_opts(dec);

    // keygen
    int keygen_bits = 256;
    auto* kg = app.add_subcommand("keygen", "emit a random key as hex");
    kg->add_option("--bits", keygen_bits, "key size: 128, 192 or 256");

    // vectors
    app.add_subcommand("vectors", "run the built-in known-answer checks");

    // analyze
    auto* an = app.add_subcommand("analyze", "diffusion and generator statistics");
    bool do_avalanche = false, do_cdist = false, do_prng = false;
    int an_rounds = 3;
    bool no_whiten = false;
    std::uint64_t an_samples = 10000, an_count = 65536, an_n = 100000;
    std::string an_seed = "1", an_base = "0", an_stride = "increment", an_matrix_out;
    std::string format_name = "text";
    auto* av = an->add_flag("--avalanche", do_avalanche, "per-bit diffusion measurement");
    auto* cd = an->add_flag("--cdist", do_cdist, "rotation-distance distribution");
    auto* pr = an->add_flag("--prng", do_prng, "key-schedule generator sanity");
    av->excludes(cd)->excludes(pr);
    cd->excludes(pr);
    an->add_option("--rounds", an_rounds, "rounds for --avalanche (1..3)");
    an->add_flag("--no-whiten", no_whiten, "skip the whitening XOR for --avalanche");
    an->add_option("--samples", an_samples, "trials for --avalanche");
    an->add_option("--seed", an_seed, "experiment seed for --avalanche (decimal or 0x hex)");
    an->add_option("--matrix-out", an_matrix_out, "write the 256x256 flip matrix to this file");
    an->add_option("--base", an_base, "base word for --cdist (decimal or 0x hex)");
    an->add_option("--count", an_count, "inputs for --cdist");
    an->add_option("--stride", an_stride, "increment or random-low-hamming")
        ->check(CLI::IsMember({"increment", "random-low-hamming"}));
    an->add_option("--n", an_n, "outputs for --prng (>= 1000)");
    add_key_opts(an);
    an->add_option("--format", format_name, "text or kv")->check(CLI::IsMember({"text", "kv"}));

    // bench
    auto* bn = app.add_subcommand("bench", "bulk encryption throughput");
    std::uint64_t bench_mib = 16;
    int bench_trials = 11;
    std::string cpu_hz_arg;
    bool compare_parallel = false;
    bn->add_option("--mib", bench_mib, "buffer size in MiB");
    bn->add_option("--trials", bench_trials, "timed trials (>= 5)");
    bn->add_option("--cpu-hz", cpu_hz_arg, "CPU frequency for cycles/byte ('auto' to detect)");
    bn->add_flag("--compare-parallel", compare_parallel,
                 "also measure the OpenMP kernel and report the speedup");
    bn->add_option("--format", format_name, "text or kv")->check(CLI::IsMember({"text", "kv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (enc->parsed() || dec->parsed()) {
            if (key_hex.empty() && key_file.empty()) {
                std::cerr << "error: one of --key or --key-file is required\n";
                return kExitUsage;
            }
            const xcrush::CipherKey key = load_key(key_hex, key_file);
            print_security_note();
            const std::vector<std::uint8_t> input = read_all(in_path);

            if (enc->parsed()) {
                const xcrush::Mode mode =
                    mode_name == "ecb" ? xcrush::Mode::Ecb : xcrush::Mode::Ctr;
                std::array<std::uint8_t, 16> nonce{};
                if (mode == xcrush::Mode::Ctr) {
                    if (nonce_hex.empty()) {
                        nonce = random_nonce();
                    } else {
                        const auto bytes = xcrush::from_hex(nonce_hex);
                        if (bytes.size() != nonce.size()) {
                            throw std::invalid_argument("nonce must be 32 hex digits, got " +
                                                        std::to_string(nonce_hex.size()));
                        }
                        std::copy(bytes.begin(), bytes.end(), nonce.begin());
                    }
                }
                const auto out = xcrush::encrypt_stream(input, key, mode, nonce);
                write_all(out_path, out);
                std::cerr << "encrypted " << input.size() << " bytes (mode=" << mode_name
                          << ", key=" << key.bits() << " bits)\n";
            } else {
                const auto out = xcrush::decrypt_stream(input, key);
                write_all(out_path, out);
                std::cerr << "decrypted " << out.size() << " bytes (key=" << key.bits()
                          << " bits)\n";
            }
            return kExitOk;
        }

        if (kg->parsed()) {
            if (keygen_bits != 128 && keygen_bits != 192 && keygen_bits != 256) {
                std::cerr << "error: --bits must be 128, 192 or 256, got " << keygen_bits << "\n";
                return kExitUsage;
            }
            try {
                std::random_device rd;
                std::vector<std::uint8_t> key(static_cast<std::size_t>(keygen_bits / 8));
                for (auto& b : key) b = static_cast<std::uint8_t>(rd());
                std::cout << xcrush::to_hex(key) << "\n";
            } catch (const std::exception& e) {
                std::cerr << "error: entropy source unavailable: " << e.what() << "\n";
                return kExitIo;
            }
            return kExitOk;
        }

        if (app.get_subcommand("vectors")->parsed()) {
            return run_vectors();
        }

        if (an->parsed()) {
            const xcrush::ReportFormat fmt = parse_format(format_name);
            if (do_avalanche + do_cdist + do_prng != 1) {
                std::cerr << "error: exactly one of --avalanche, --cdist, --prng is required\n";
                return kExitUsage;
            }
            if (do_avalanche) {
                const xcrush::Word seed = std::stoull(an_seed, nullptr, 0);
                const auto rep =
                    xcrush::measure_avalanche(an_rounds, !no_whiten, an_samples, seed);
                rep.write(std::cout, fmt);
                if (!an_matrix_out.empty()) {
                    std::ofstream m(an_matrix_out);
                    if (!m) throw IoError("cannot open matrix output: " + an_matrix_out);
                    m << std::setprecision(6) << std::fixed;
                    for (int i = 0; i < 256; ++i) {
                        for (int j = 0; j < 256; ++j) {
                            m << rep.matrix_at(i, j) << (j == 255 ? '\n' : ' ');
                        }
                    }
                }
            } else if (do_cdist) {
                const xcrush::Word base = std::stoull(an_base, nullptr, 0);
                const auto stride = an_stride == "increment" ? xcrush::Stride::Increment
                                                             : xcrush::Stride::RandomLowHamming;
                xcrush::measure_c_distribution(base, an_count, stride).write(std::cout, fmt);
            } else {
                // A fixed default key keeps the report reproducible out of the box.
                const xcrush::CipherKey key =
                    (key_hex.empty() && key_file.empty())
                        ? xcrush::CipherKey::from_hex(
                              "000102030405060708090a0b0c0d0e0f"
                              "101112131415161718191a1b1c1d1e1f")
                        : load_key(key_hex, key_file);
                xcrush::prng_sanity(key, an_n).write(std::cout, fmt);
            }
            return kExitOk;
        }

        if (bn->parsed()) {
            const xcrush::ReportFormat fmt = parse_format(format_name);
            std::optional<double> hz;
            if (cpu_hz_arg == "auto") {
                hz = xcrush::detect_cpu_hz();
                if (!hz) std::cerr << "note: could not detect CPU frequency\n";
            } else if (!cpu_hz_arg.empty()) {
                hz = std::stod(cpu_hz_arg);
            }
            const auto serial = xcrush::run_bench(bench_mib * 1024 * 1024, bench_trials, hz);
            serial.write(std::cout, fmt);
            if (serial.timer_warning) {
                std::cerr << "warning: timer resolution exceeds 1% of the trial duration\n";
            }
            if (compare_parallel) {
                const auto par =
                    xcrush::run_bench_parallel(bench_mib * 1024 * 1024, bench_trials, hz);
                par.write(std::cout, fmt);
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.2f",
                              par.median_throughput / serial.median_throughput);
                xcrush::metric_line(std::cout, fmt, "parallel_speedup", buf);
                if (!xcrush::bulk::openmp_enabled()) {
                    std::cerr << "note: built without OpenMP; both kernels run serially\n";
                }
            }
            return kExitOk;
        }
    } catch (const xcrush::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const xcrush::PaddingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const xcrush::LengthError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }

    return kExitOk;
}
