#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chc/bitvector.hpp"
#include "chc/code_builder.hpp"
#include "chc/common.hpp"
#include "chc/pred_set.hpp"

namespace chc {

// One class of leftmost-per-depth codewords covering lengths (len_lo, len_hi].
// Every member shares a prefix of shared_ones set bits, which is stripped;
// what remains (at most 2*class_width - 1 bits) is stored left-aligned in a
// fixed tail slot, concatenated with the local depth. That packed key orders
// exactly like the (right-padded codeword, length) pair it replaces.
struct ClassTree {
    bool long_tailed = false;
    uint32_t index = 0;      // k, 1-based
    uint32_t len_lo = 0;     // covers lengths (len_lo, len_hi]
    uint32_t len_hi = 0;
    uint32_t shared_ones = 0;
    uint32_t tail_width = 0;   // 2*class_width - 1
    uint32_t depth_bits = 0;   // ceil(lg class_width) + 1
    PredSet tree;
    std::vector<uint32_t> local_depths;  // sorted, parallel to tree order

    uint32_t key_width() const { return tail_width + depth_bits; }
    uint64_t pack(uint64_t codeword, uint32_t length) const;
    // inverse of pack: full codeword value and its length
    void unpack(uint64_t key, uint64_t& codeword, uint32_t& length) const;
};

struct CodebookSpace {
    uint64_t stored_keys = 0;
    uint64_t key_bits = 0;            // packed keys at their key_width
    uint64_t tree_overhead_bits = 0;  // routers, prefix sums, local depths
    uint64_t occupancy_bits = 0;      // D plus its directory
    uint64_t kind_bits = 0;           // long/short marker per occupied depth
    uint64_t plain_first_bits = 0;    // lmax * lmax
    uint64_t plain_pair_bits = 0;     // occupied * (lmax + ceil(lg lmax))

    uint64_t partitioned_total() const {
        return key_bits + tree_overhead_bits + occupancy_bits + kind_bits;
    }
    uint64_t plain_total() const { return plain_first_bits + plain_pair_bits; }
};

// counters for the instrumented decode path
struct LookupStats {
    uint64_t consults = 0;     // ClassTree predecessor queries issued
    uint64_t node_probes = 0;  // PredSet nodes touched
};

// Partitioned representation of P and First: per-length-class predecessor
// trees over truncated tails, an occupied-depth bit vector D, and a long vs
// short marker per occupied depth. Depth lookup routes through the length of
// the query's leading ones run; at most two long and two short classes can
// contain the answer.
class PartitionedCodebook {
public:
    PartitionedCodebook() = default;
    explicit PartitionedCodebook(const CanonicalCode& code);

    struct DepthHit {
        uint32_t length;
        uint64_t first;  // First[length]
    };

    // x is the lmax-bit peek of a stream positioned at a codeword boundary
    DepthHit lookup_depth(uint64_t x, LookupStats* stats = nullptr) const;

    // First[len], or nullopt when no leaf sits at that depth
    std::optional<uint64_t> first_of_depth(uint32_t len) const;

    uint32_t max_len() const { return m_lmax; }
    uint32_t long_width() const { return m_w; }        // W = ceil(lg sigma)
    uint32_t short_width() const { return m_wp; }      // W' = 2 ceil(lg lg sigma)
    uint32_t unary_prefix_len(uint64_t x) const;       // leading ones among lmax bits

    size_t max_class_size() const { return m_max_class_size; }
    const std::vector<ClassTree>& long_classes() const { return m_long; }
    const std::vector<ClassTree>& short_classes() const { return m_short; }
    const RsBitVector& occupancy() const { return m_depth_occupied; }
    bool kind_is_long(uint32_t occupied_rank) const {  // 1-based rank in D
        return m_kind_long[occupied_rank - 1];
    }

    CodebookSpace space_bits() const;

private:
    const ClassTree* class_for(bool long_tailed, uint32_t k) const;

    uint32_t m_sigma = 0;
    uint32_t m_lmax = 0;
    uint32_t m_w = 0;
    uint32_t m_wp = 0;
    uint64_t m_deepest_first = 0;  // First[lmax]
    std::vector<ClassTree> m_long;   // sparse, indexed k-1 (empty trees allowed)
    std::vector<ClassTree> m_short;
    RsBitVector m_depth_occupied;    // D over depths 1..lmax
    std::vector<bool> m_kind_long;   // per occupied depth, in depth order
    size_t m_max_class_size = 0;
};

// class width bookkeeping, shared with tests
uint32_t codebook_long_width(uint32_t sigma);
uint32_t codebook_short_width(uint32_t sigma);

}  // namespace chc
