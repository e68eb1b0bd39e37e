#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chc/bench.hpp"
#include "chc/codec.hpp"
#include "chc/zipf.hpp"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw chc::Error(chc::Errc::contract, "cannot open " + path);
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::string& path, const void* data, size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw chc::Error(chc::Errc::contract, "cannot open " + path);
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw chc::Error(chc::Errc::contract, "write failed for " + path);
}

// symbol streams on disk are either raw bytes or little-endian u32 tokens
std::vector<uint32_t> load_symbols(const std::string& path, const std::string& format) {
    std::vector<uint8_t> raw = read_file(path);
    std::vector<uint32_t> symbols;
    if (format == "byte") {
        symbols.assign(raw.begin(), raw.end());
    } else {
        if (raw.size() % 4 != 0)
            throw chc::Error(chc::Errc::contract, path + ": size not a multiple of 4 (u32 format)");
        symbols.reserve(raw.size() / 4);
        for (size_t i = 0; i < raw.size(); i += 4) {
            symbols.push_back(static_cast<uint32_t>(raw[i]) |
                              static_cast<uint32_t>(raw[i + 1]) << 8 |
                              static_cast<uint32_t>(raw[i + 2]) << 16 |
                              static_cast<uint32_t>(raw[i + 3]) << 24);
        }
    }
    return symbols;
}

void store_symbols(const std::string& path, const std::vector<uint32_t>& symbols,
                   const std::string& format) {
    if (format == "byte") {
        std::vector<uint8_t> raw;
        raw.reserve(symbols.size());
        for (uint32_t s : symbols) {
            if (s > 255)
                throw chc::Error(chc::Errc::contract,
                                 "decoded symbol exceeds a byte; use --format u32");
            raw.push_back(static_cast<uint8_t>(s));
        }
        write_file(path, raw.data(), raw.size());
    } else {
        std::vector<uint8_t> raw;
        raw.reserve(symbols.size() * 4);
        for (uint32_t s : symbols) {
            raw.push_back(static_cast<uint8_t>(s));
            raw.push_back(static_cast<uint8_t>(s >> 8));
            raw.push_back(static_cast<uint8_t>(s >> 16));
            raw.push_back(static_cast<uint8_t>(s >> 24));
        }
        write_file(path, raw.data(), raw.size());
    }
}

chc::DecodeStrategy parse_strategy(const std::string& name) {
    if (name == "tree") return chc::DecodeStrategy::tree_walk;
    if (name == "bin") return chc::DecodeStrategy::bin_search;
    if (name == "exp") return chc::DecodeStrategy::exp_search;
    return chc::DecodeStrategy::partitioned;
}

int cmd_encode(const std::string& in, const std::string& out, const std::string& format,
               bool check) {
    std::vector<uint32_t> symbols = load_symbols(in, format);
    std::vector<uint8_t> file = chc::encode_stream(symbols);
    write_file(out, file.data(), file.size());
    if (check) {
        for (auto strategy :
             {chc::DecodeStrategy::tree_walk, chc::DecodeStrategy::bin_search,
              chc::DecodeStrategy::exp_search, chc::DecodeStrategy::partitioned}) {
            if (chc::decode_stream(file, strategy) != symbols)
                throw chc::Error(chc::Errc::corrupt, "post-encode decode check failed");
        }
        std::cout << "check: all four decoders reproduce the input\n";
    }
    std::cout << in << " -> " << out << ": " << symbols.size() << " symbols, "
              << file.size() << " bytes\n";
    return 0;
}

int cmd_decode(const std::string& in, const std::string& out, const std::string& decoder,
               const std::string& format) {
    std::vector<uint8_t> file = read_file(in);
    std::vector<uint32_t> symbols = chc::decode_stream(file, parse_strategy(decoder));
    store_symbols(out, symbols, format);
    std::cout << in << " -> " << out << ": " << symbols.size() << " symbols\n";
    return 0;
}

int cmd_inspect(const std::string& path) {
    std::vector<uint8_t> file = read_file(path);
    size_t payload_offset = 0;
    chc::FileHeader h = chc::read_header(file, payload_offset);
    std::cout << "file:            " << path << "\n"
              << "n:               " << h.n << "\n"
              << "sigma:           " << h.sigma_present << "\n"
              << "lmax:            " << static_cast<unsigned>(h.max_len) << "\n"
              << "header bytes:    " << payload_offset << "\n"
              << "payload bytes:   " << file.size() - payload_offset << "\n";
    if (h.sigma_present == 0) return 0;

    chc::CanonicalCode code = chc::code_from_header(h);
    chc::PartitionedCodebook cb(code);
    chc::CodebookSpace sp = cb.space_bits();
    chc::WaveletTree wt(code.lengths, code.max_len);
    std::cout << "long width W:    " << cb.long_width() << "\n"
              << "short width W':  " << cb.short_width() << "\n"
              << "stored keys:     " << sp.stored_keys << "\n"
              << "dict bits:       " << sp.partitioned_total() << " (keys " << sp.key_bits
              << ", tree overhead " << sp.tree_overhead_bits << ", D " << sp.occupancy_bits
              << ", kind " << sp.kind_bits << ")\n"
              << "plain bits:      " << sp.plain_total() << " (First " << sp.plain_first_bits
              << ", pair keys " << sp.plain_pair_bits << ")\n"
              << "wavelet bits:    " << wt.payload_bits() + wt.directory_bits() << " (payload "
              << wt.payload_bits() << ", directories " << wt.directory_bits() << ")\n";

    chc::ValidationReport rep = chc::validate(code, h.n);
    std::cout << "tail census (depths with First tail_len >= s):\n";
    for (size_t s = 1; s <= rep.census.size(); ++s)
        std::cout << "  s=" << s << ": " << rep.census[s - 1] << "\n";
    std::cout << "census max (count * 2^s / sigma): " << rep.census_max_ratio << "\n";
    std::cout << "structure checks: " << (rep.ok() ? "ok" : "VIOLATED") << "\n";
    for (const auto& v : rep.violations) std::cout << "  violation: " << v << "\n";
    return rep.ok() ? 0 : kExitData;
}

int cmd_gen(uint32_t sigma, double alpha, uint64_t n, uint64_t seed, const std::string& out,
            std::string format) {
    if (format.empty()) format = sigma > 256 ? "u32" : "byte";
    std::vector<uint32_t> symbols = chc::zipf_generate({sigma, alpha, n, seed});
    store_symbols(out, symbols, format);
    std::cout << "wrote " << n << " symbols (sigma=" << sigma << ", alpha=" << alpha
              << ", seed=" << seed << ", format=" << format << ") to " << out << "\n";
    return 0;
}

int cmd_bench(const std::vector<uint32_t>& sigma_list, double alpha, uint64_t n, uint64_t seed,
              const std::string& csv_path) {
    std::ostringstream csv;
    csv << chc::bench_csv_header() << "\n";
    for (uint32_t sigma : sigma_list) {
        chc::BenchPoint p = chc::run_bench_point(sigma, alpha, n, seed);
        csv << chc::bench_csv_row(p) << "\n";
        std::cout << "sigma=" << sigma << " lmax=" << p.lmax
                  << " dict(part/plain)=" << p.dict_bits_partitioned << "/" << p.dict_bits_plain
                  << " avg probes part=" << p.avg_probes_part
                  << " avg steps exp/bin=" << p.avg_steps_exp << "/" << p.avg_steps_bin
                  << " rare=" << p.rare_ratio << " wall=" << p.encode_decode_seconds << "s\n";
    }
    std::string data = csv.str();
    if (csv_path.empty())
        std::cout << data;
    else
        write_file(csv_path, data.data(), data.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical Huffman coding with a partitioned code dictionary"};
    app.require_subcommand(1);

    std::string in, out, format = "byte", decoder, csv_path;
    bool check_flag = false;
    std::string decoder_opt;
    uint32_t sigma = 0;
    double alpha = 1.0;
    uint64_t n = 0, seed = 0;
    std::vector<uint32_t> sigma_list;

    auto* enc = app.add_subcommand("encode", "compress a symbol stream");
    enc->add_option("in", in)->required();
    enc->add_option("out", out)->required();
    enc->add_option("--decoder", decoder_opt, "pass 'check' to verify with all decoders")
        ->check(CLI::IsMember({"check"}));
    enc->add_flag("--check", check_flag, "verify with all decoders after encoding");
    enc->add_option("--format", format)->check(CLI::IsMember({"byte", "u32"}));

    auto* dec = app.add_subcommand("decode", "decompress a .chc file");
    dec->add_option("in", in)->required();
    dec->add_option("out", out)->required();
    dec->add_option("--decoder", decoder, "tree | bin | exp | part")
        ->required()
        ->check(CLI::IsMember({"tree", "bin", "exp", "part"}));
    dec->add_option("--format", format)->check(CLI::IsMember({"byte", "u32"}));

    auto* ins = app.add_subcommand("inspect", "print header, space audit and tail census");
    ins->add_option("file", in)->required();

    std::string gen_format;
    auto* gen = app.add_subcommand("gen", "generate a Zipf-distributed symbol stream");
    gen->add_option("--sigma", sigma)->required();
    gen->add_option("--alpha", alpha)->required();
    gen->add_option("--n", n)->required();
    gen->add_option("--seed", seed)->required();
    gen->add_option("out", out)->required();
    gen->add_option("--format", gen_format)->check(CLI::IsMember({"byte", "u32"}));

    auto* bench = app.add_subcommand("bench", "decode experiments over a sigma sweep");
    bench->add_option("--sigma-list", sigma_list)->required()->delimiter(',');
    bench->add_option("--alpha", alpha)->required();
    bench->add_option("--n", n)->required();
    bench->add_option("--seed", seed)->required();
    bench->add_option("--csv", csv_path, "CSV output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*enc) return cmd_encode(in, out, format, check_flag || decoder_opt == "check");
        if (*dec) return cmd_decode(in, out, decoder, format);
        if (*ins) return cmd_inspect(in);
        if (*gen) return cmd_gen(sigma, alpha, n, seed, out, gen_format);
        if (*bench) return cmd_bench(sigma_list, alpha, n, seed, csv_path);
    } catch (const chc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
