#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chc/common.hpp"

namespace chc {

// Symbol histogram. Symbols are arbitrary 32-bit ids kept in ascending order;
// zero-count symbols are dropped before code construction.
struct FrequencyTable {
    std::vector<uint32_t> symbols;  // strictly ascending
    std::vector<uint64_t> counts;   // parallel, all > 0
    uint64_t total = 0;

    static FrequencyTable from_bytes(std::span<const uint8_t> text);
    static FrequencyTable from_symbols(std::span<const uint32_t> text);
};

// Optimal codeword lengths, keyed by ascending symbol id.
struct CodeLengths {
    std::vector<uint32_t> symbols;
    std::vector<uint8_t> lengths;
    uint8_t max_len = 0;
};

// Full description of a canonical code. first[l-1] is the value of the
// lexicographically smallest codeword of length l; only meaningful where
// count_per_len[l-1] > 0.
struct CanonicalCode {
    uint32_t sigma = 0;
    uint8_t max_len = 0;
    std::vector<uint32_t> count_per_len;      // numl[1..max_len]
    std::vector<uint32_t> canonical_symbols;  // sorted by (length, symbol)
    std::vector<uint64_t> first;              // First[1..max_len]

    // derived views, rebuilt by canonicalize()
    std::vector<uint32_t> sorted_symbols;  // ascending symbol id
    std::vector<uint8_t> lengths;          // parallel to sorted_symbols (the L array)

    bool depth_occupied(uint32_t len) const {
        return len >= 1 && len <= max_len && count_per_len[len - 1] > 0;
    }
    uint64_t first_of(uint32_t len) const { return first[len - 1]; }
    // codeword value left-aligned to max_len bits
    uint64_t padded_first(uint32_t len) const { return first[len - 1] << (max_len - len); }

    // position of symbol in sorted_symbols (1-based), if present
    std::optional<uint32_t> dense_index(uint32_t symbol) const;

    struct Codeword {
        uint32_t symbol;
        uint64_t value;
        uint8_t length;
    };
    // all codewords in canonical order
    std::vector<Codeword> codewords() const;
};

// Maximal leading all-ones run and what follows it. tail keeps the bits after
// the run (starting with a 0 when non-empty).
struct TailSplit {
    uint32_t ones_run = 0;  // j
    uint32_t tail_len = 0;  // s = |C| - j
    uint64_t tail = 0;
};

TailSplit tail_split(uint64_t codeword, uint32_t length);

// Huffman code lengths via the two-queue construction; deterministic: leaves
// sorted by (count, symbol), ties at equal weight take leaves before merged
// nodes, merged nodes in creation order.
CodeLengths compute_lengths(const FrequencyTable& freqs);

// Canonical codeword assignment in (length, symbol) order. Rejects length
// sets that violate Kraft equality (except the degenerate single-symbol code
// L = [1], which is accepted with codeword "0").
CanonicalCode canonicalize(const CodeLengths& lengths);

struct ValidationReport {
    bool kraft_ok = false;
    bool strict_increase_ok = false;
    bool nondecreasing_ok = false;
    bool lmax_bound_ok = false;
    bool tail_bound_ok = false;
    bool deepest_all_ones_ok = false;
    bool shallowest_all_zeros_ok = false;
    std::vector<std::string> violations;  // each names the offending codeword

    // census[s-1] = number of depths whose leftmost codeword has tail_len >= s
    std::vector<uint32_t> census;
    double census_max_ratio = 0.0;  // max over s of census[s-1] * 2^s / sigma

    uint32_t sigma = 0;
    uint8_t lmax = 0;
    uint32_t lmax_cap = 0;  // min(sigma-1, floor(log_phi n))

    bool ok() const {
        return kraft_ok && strict_increase_ok && nondecreasing_ok && lmax_bound_ok &&
               tail_bound_ok && deepest_all_ones_ok && shallowest_all_zeros_ok;
    }
};

// Checks every structural property of a canonical code against the total
// occurrence count it was built from.
ValidationReport validate(const CanonicalCode& code, uint64_t total_occurrences);

// Same checks over an explicit assignment, so broken codes can be probed.
ValidationReport validate_assignment(std::span<const uint64_t> codewords,
                                     std::span<const uint8_t> lengths, uint32_t sigma,
                                     uint64_t total_occurrences);

// largest k with phi^k <= n, phi the golden ratio
uint32_t floor_log_phi(uint64_t n);

}  // namespace chc
