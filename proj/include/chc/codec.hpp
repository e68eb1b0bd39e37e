#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chc/bitio.hpp"
#include "chc/code_builder.hpp"
#include "chc/codebook.hpp"
#include "chc/common.hpp"
#include "chc/wavelet_tree.hpp"

namespace chc {

enum class DecodeStrategy { tree_walk, bin_search, exp_search, partitioned };

// per-session decode instrumentation; all counters are totals unless named max_*
struct DecodeStats {
    uint64_t symbols = 0;
    uint64_t peeks = 0;
    uint64_t reads = 0;
    uint64_t consults = 0;          // ClassTree consults (partitioned)
    uint64_t pred_node_probes = 0;  // PredSet node visits (partitioned)
    uint64_t wt_probes = 0;         // wavelet tree rank/select probes
    uint64_t bin_steps = 0;         // list comparisons (bin_search)
    uint64_t exp_steps = 0;         // list comparisons (exp_search)
    uint32_t max_consults = 0;
    uint32_t max_pred_node_probes = 0;
    uint32_t max_bin_steps = 0;
    uint32_t max_exp_steps = 0;
};

// Symbol encoder: length from the wavelet tree, First from the partitioned
// codebook, offset from rank.
class Encoder {
public:
    explicit Encoder(const CanonicalCode& code);

    struct Code {
        uint64_t value;
        uint32_t length;
    };
    Code encode_symbol(uint32_t symbol) const;  // Errc::contract if absent

    const CanonicalCode& code() const { return m_code; }
    const WaveletTree& wavelet() const { return m_wt; }
    const PartitionedCodebook& codebook() const { return m_cb; }

private:
    CanonicalCode m_code;
    WaveletTree m_wt;
    PartitionedCodebook m_cb;
};

// Stream decoder for one strategy. All strategies produce identical symbols;
// only the depth-resolution machinery differs.
class Decoder {
public:
    Decoder(const CanonicalCode& code, DecodeStrategy strategy);

    DecodeStrategy strategy() const { return m_strategy; }
    const CanonicalCode& code() const { return m_code; }
    const PartitionedCodebook* codebook() const {
        return m_strategy == DecodeStrategy::partitioned ? &m_cb : nullptr;
    }

    // decodes one symbol; the caller bounds the number of calls by the header n
    uint32_t decode_symbol(BitCursor& cursor, DecodeStats* stats = nullptr) const;

    // depth resolution via binary / exponential search over the padded First
    // list; exposed for the step-count experiments
    struct DepthHit {
        uint32_t length;
        uint64_t first;
        uint32_t steps;
    };
    DepthHit binsearch_depth(uint64_t x) const;
    DepthHit expsearch_depth(uint64_t x) const;

private:
    uint32_t finish_symbol(BitCursor& cursor, uint32_t length, uint64_t first,
                           DecodeStats* stats) const;
    uint32_t tree_walk(BitCursor& cursor, DecodeStats* stats) const;

    CanonicalCode m_code;
    DecodeStrategy m_strategy;
    WaveletTree m_wt;
    PartitionedCodebook m_cb;                              // partitioned only
    std::vector<std::pair<uint64_t, uint32_t>> m_firsts;   // (padded, length), ascending
    std::vector<int32_t> m_tree_left, m_tree_right;        // tree_walk only
};

// CHC1 container: magic, version, n, present alphabet, per-length counts,
// symbols in canonical order, then the MSB-first payload.
struct FileHeader {
    static constexpr char magic[4] = {'C', 'H', 'C', '1'};
    static constexpr uint8_t version = 1;

    uint64_t n = 0;
    uint32_t sigma_present = 0;
    uint8_t max_len = 0;
    std::vector<uint32_t> count_per_len;
    std::vector<uint32_t> symbols_in_canonical_order;

    size_t byte_size() const {
        return 4 + 1 + 8 + 4 + 1 + 4 * count_per_len.size() +
               4 * symbols_in_canonical_order.size();
    }
};

std::vector<uint8_t> encode_stream(std::span<const uint32_t> symbols);
std::vector<uint32_t> decode_stream(std::span<const uint8_t> bytes, DecodeStrategy strategy,
                                    DecodeStats* stats = nullptr);

// header parsing/serialization, shared by decode_stream and the inspector
FileHeader read_header(std::span<const uint8_t> bytes, size_t& payload_offset);
void write_header(const FileHeader& header, std::vector<uint8_t>& out);
CanonicalCode code_from_header(const FileHeader& header);

}  // namespace chc
