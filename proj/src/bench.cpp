#include "chc/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "chc/zipf.hpp"

namespace chc {

double measure_rare_occurrences(std::span<const uint32_t> text, const CanonicalCode& code) {
    if (text.empty() || code.sigma < 2) return 0.0;
    const double threshold =
        2.0 * std::log(static_cast<double>(code.sigma)) / std::log((1.0 + std::sqrt(5.0)) / 2.0);
    uint64_t rare = 0;
    // per-symbol rarity from the L array, then one pass over the text
    std::vector<bool> is_rare(code.sorted_symbols.size());
    for (size_t i = 0; i < code.lengths.size(); ++i)
        is_rare[i] = static_cast<double>(code.lengths[i]) > threshold;
    for (uint32_t s : text) {
        auto idx = code.dense_index(s);
        if (!idx) raise(Errc::contract, "measure_rare_occurrences: symbol not in code");
        rare += is_rare[*idx - 1];
    }
    return static_cast<double>(rare) / static_cast<double>(text.size());
}

BenchPoint run_bench_point(uint32_t sigma, double alpha, uint64_t n, uint64_t seed) {
    BenchPoint p;
    p.sigma = sigma;
    p.alpha = alpha;
    p.n = n;

    std::vector<uint32_t> text = zipf_generate({sigma, alpha, n, seed});

    auto t0 = std::chrono::steady_clock::now();
    std::vector<uint8_t> file = encode_stream(text);

    DecodeStats part_stats, bin_stats, exp_stats;
    // decode one strategy at a time so the sweep's large points stay lean
    auto check = [&](DecodeStrategy s, DecodeStats* stats) {
        if (decode_stream(file, s, stats) != text)
            raise(Errc::corrupt, "bench: decoder strategies disagree");
    };
    check(DecodeStrategy::partitioned, &part_stats);
    check(DecodeStrategy::bin_search, &bin_stats);
    check(DecodeStrategy::exp_search, &exp_stats);
    check(DecodeStrategy::tree_walk, nullptr);
    auto t1 = std::chrono::steady_clock::now();
    p.encode_decode_seconds = std::chrono::duration<double>(t1 - t0).count();

    FrequencyTable ft = FrequencyTable::from_symbols(text);
    CanonicalCode code = canonicalize(compute_lengths(ft));
    p.sigma_present = code.sigma;
    p.lmax = code.max_len;

    PartitionedCodebook cb(code);
    CodebookSpace sp = cb.space_bits();
    p.dict_bits_plain = sp.plain_total();
    p.dict_bits_partitioned = sp.partitioned_total();
    p.max_class_size = cb.max_class_size();

    WaveletTree wt(code.lengths, code.max_len);
    p.wt_bits = wt.payload_bits() + wt.directory_bits();

    double symbols = static_cast<double>(part_stats.symbols);
    p.avg_probes_part =
        (static_cast<double>(part_stats.consults) + part_stats.pred_node_probes) / symbols;
    p.avg_steps_bin = static_cast<double>(bin_stats.bin_steps) / symbols;
    p.avg_steps_exp = static_cast<double>(exp_stats.exp_steps) / symbols;
    p.max_consults = part_stats.max_consults;
    p.max_pred_node_probes = part_stats.max_pred_node_probes;
    p.max_exp_steps = exp_stats.max_exp_steps;
    p.max_bin_steps = bin_stats.max_bin_steps;

    p.rare_ratio = measure_rare_occurrences(text, code);
    p.census_s_max = validate(code, ft.total).census_max_ratio;
    return p;
}

std::string bench_csv_header() {
    return "sigma,alpha,n,lmax,dict_bits_plain,dict_bits_partitioned,wt_bits,"
           "avg_probes_part,avg_steps_exp,avg_steps_bin,rare_ratio,census_s_max";
}

std::string bench_csv_row(const BenchPoint& p) {
    std::ostringstream os;
    os.precision(6);
    os << p.sigma << ',' << p.alpha << ',' << p.n << ',' << p.lmax << ','
       << p.dict_bits_plain << ',' << p.dict_bits_partitioned << ',' << p.wt_bits << ','
       << p.avg_probes_part << ',' << p.avg_steps_exp << ',' << p.avg_steps_bin << ','
       << p.rare_ratio << ',' << p.census_s_max;
    return os.str();
}

}  // namespace chc
