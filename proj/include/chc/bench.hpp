#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chc/code_builder.hpp"
#include "chc/codec.hpp"

namespace chc {

// fraction of text occurrences whose codeword length exceeds 2 log_phi(sigma)
double measure_rare_occurrences(std::span<const uint32_t> text, const CanonicalCode& code);

// one sweep point of the decode experiments; field order matches the CSV
struct BenchPoint {
    uint32_t sigma = 0;  // generator alphabet size
    double alpha = 0.0;
    uint64_t n = 0;
    uint32_t lmax = 0;
    uint64_t dict_bits_plain = 0;
    uint64_t dict_bits_partitioned = 0;
    uint64_t wt_bits = 0;
    double avg_probes_part = 0.0;  // ClassTree consults + PredSet node visits
    double avg_steps_exp = 0.0;
    double avg_steps_bin = 0.0;
    double rare_ratio = 0.0;
    double census_s_max = 0.0;  // max over s of census(s) * 2^s / sigma

    // extras reported alongside the CSV, never asserted
    uint32_t sigma_present = 0;
    uint32_t max_consults = 0;
    uint32_t max_pred_node_probes = 0;
    uint32_t max_exp_steps = 0;
    uint32_t max_bin_steps = 0;
    size_t max_class_size = 0;
    double encode_decode_seconds = 0.0;
};

// Generates a Zipf text, builds the code, decodes with every strategy and
// collects the measured quantities. Throws Errc::corrupt if any strategy
// disagrees with another.
BenchPoint run_bench_point(uint32_t sigma, double alpha, uint64_t n, uint64_t seed);

std::string bench_csv_header();
std::string bench_csv_row(const BenchPoint& p);

}  // namespace chc
