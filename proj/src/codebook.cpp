#include "chc/codebook.hpp"

#include <algorithm>
#include <cmath>

namespace chc {

uint32_t codebook_long_width(uint32_t sigma) { return std::max<uint32_t>(1, ceil_log2(sigma)); }

uint32_t codebook_short_width(uint32_t sigma) {
    // ceil(2 lg lg sigma), sigma clamped to >= 4 for the inner logarithm
    double inner = std::log2(std::max<uint32_t>(sigma, 4));
    uint32_t w = static_cast<uint32_t>(std::ceil(2.0 * std::log2(inner) - 1e-9));
    return std::max<uint32_t>(2, w);
}

uint64_t ClassTree::pack(uint64_t codeword, uint32_t length) const {
    uint32_t remaining_len = length - shared_ones;
    uint64_t remaining = codeword & low_mask(remaining_len);
    uint64_t slot = remaining << (tail_width - remaining_len);
    return (slot << depth_bits) | (length - len_lo);
}

void ClassTree::unpack(uint64_t key, uint64_t& codeword, uint32_t& length) const {
    uint32_t local_depth = static_cast<uint32_t>(key & low_mask(depth_bits));
    uint64_t slot = key >> depth_bits;
    length = len_lo + local_depth;
    uint32_t remaining_len = length - shared_ones;
    uint64_t remaining = slot >> (tail_width - remaining_len);
    codeword = (low_mask(shared_ones) << remaining_len) | remaining;
}

namespace {

// Every canonical codeword's tail is at most class_width bits, so a member
// of (lo, hi] has a ones run of at least lo - class_width + 1; that prefix is
// shared and stripped, leaving at most 2*class_width - 1 bits. The slot is
// further clamped by the deepest representable remainder, which matters when
// lg sigma outgrows lmax.
ClassTree make_class(bool long_tailed, uint32_t k, uint32_t class_width, uint32_t lmax) {
    ClassTree ct;
    ct.long_tailed = long_tailed;
    ct.index = k;
    ct.len_lo = (k - 1) * class_width;
    ct.len_hi = k * class_width;
    ct.shared_ones =
        ct.len_lo + 1 > class_width ? ct.len_lo + 1 - class_width : 0;
    uint32_t deepest = std::min(ct.len_hi, lmax);
    ct.tail_width = std::min(2 * class_width - 1, deepest - ct.shared_ones);
    ct.depth_bits = ceil_log2(class_width + 1);  // local depths are 1..class_width
    return ct;
}

}  // namespace

PartitionedCodebook::PartitionedCodebook(const CanonicalCode& code) {
    m_sigma = code.sigma;
    m_lmax = code.max_len;
    m_w = codebook_long_width(code.sigma);
    m_wp = codebook_short_width(code.sigma);

    uint32_t long_classes = (m_lmax + m_w - 1) / m_w;
    uint32_t short_classes = (m_lmax + m_wp - 1) / m_wp;
    m_long.reserve(long_classes);
    m_short.reserve(short_classes);
    for (uint32_t k = 1; k <= long_classes; ++k)
        m_long.push_back(make_class(true, k, m_w, m_lmax));
    for (uint32_t k = 1; k <= short_classes; ++k)
        m_short.push_back(make_class(false, k, m_wp, m_lmax));
    for (const ClassTree& ct : m_long)
        if (ct.key_width() > 64)
            raise(Errc::unsupported, "PartitionedCodebook: packed class key exceeds 64 bits");
    for (const ClassTree& ct : m_short)
        if (ct.key_width() > 64)
            raise(Errc::unsupported, "PartitionedCodebook: packed class key exceeds 64 bits");

    // classify each occupied depth's First codeword and collect per-class keys
    std::vector<std::vector<uint64_t>> long_keys(long_classes), short_keys(short_classes);
    std::vector<std::vector<uint32_t>> long_depths(long_classes), short_depths(short_classes);
    RsBitVector::Builder d;
    for (uint32_t len = 1; len <= m_lmax; ++len) {
        bool occupied = code.depth_occupied(len);
        d.push(occupied);
        if (!occupied) continue;
        uint64_t first = code.first_of(len);
        TailSplit ts = tail_split(first, len);
        bool long_tailed = ts.tail_len >= m_wp;
        m_kind_long.push_back(long_tailed);
        uint32_t cw = long_tailed ? m_w : m_wp;
        uint32_t k = (len + cw - 1) / cw;
        ClassTree& ct = long_tailed ? m_long[k - 1] : m_short[k - 1];
        if (ts.ones_run < ct.shared_ones)
            raise(Errc::corrupt, "PartitionedCodebook: ones run below class prefix");
        (long_tailed ? long_keys : short_keys)[k - 1].push_back(ct.pack(first, len));
        (long_tailed ? long_depths : short_depths)[k - 1].push_back(len - ct.len_lo);
    }
    m_depth_occupied = d.build();
    m_deepest_first = code.first_of(m_lmax);

    for (uint32_t k = 0; k < long_classes; ++k) {
        m_long[k].tree = PredSet(long_keys[k], m_long[k].key_width());
        m_long[k].local_depths = std::move(long_depths[k]);
        m_max_class_size = std::max(m_max_class_size, long_keys[k].size());
    }
    for (uint32_t k = 0; k < short_classes; ++k) {
        m_short[k].tree = PredSet(short_keys[k], m_short[k].key_width());
        m_short[k].local_depths = std::move(short_depths[k]);
        m_max_class_size = std::max(m_max_class_size, short_keys[k].size());
    }
}

uint32_t PartitionedCodebook::unary_prefix_len(uint64_t x) const {
    uint64_t inverted = ~x & low_mask(m_lmax);
    if (inverted == 0) return m_lmax;
    return m_lmax - static_cast<uint32_t>(std::bit_width(inverted));
}

const ClassTree* PartitionedCodebook::class_for(bool long_tailed, uint32_t k) const {
    const auto& classes = long_tailed ? m_long : m_short;
    if (k < 1 || k > classes.size()) return nullptr;
    return &classes[k - 1];
}

PartitionedCodebook::DepthHit PartitionedCodebook::lookup_depth(uint64_t x,
                                                                LookupStats* stats) const {
    uint32_t u = unary_prefix_len(x);
    if (u == m_lmax) {
        // all-ones peek: only the deepest (all-ones) codeword can prefix it
        return {m_lmax, m_deepest_first};
    }

    // The true depth l* lies in (u, u+W]; if First[l*] is short-tailed it
    // lies in (u, u+W']. Each range meets at most two classes of its kind.
    bool found = false;
    uint64_t best_padded = 0;
    DepthHit best{0, 0};
    for (int kind = 0; kind < 2; ++kind) {
        bool long_tailed = kind == 0;
        uint32_t cw = long_tailed ? m_w : m_wp;
        uint32_t k_first = (u + 1 + cw - 1) / cw;
        uint32_t k_last = (u + cw + cw - 1) / cw;
        for (uint32_t k = k_first; k <= k_last; ++k) {
            const ClassTree* ct = class_for(long_tailed, k);
            if (!ct || ct->tree.empty()) continue;
            if (u < ct->shared_ones) continue;  // x below every key of the class
            if (stats) ++stats->consults;
            uint32_t remaining_bits = m_lmax - ct->shared_ones;
            uint64_t xrem = x & low_mask(remaining_bits);
            uint64_t xslot = remaining_bits >= ct->tail_width
                                 ? xrem >> (remaining_bits - ct->tail_width)
                                 : xrem << (ct->tail_width - remaining_bits);
            uint64_t q = (xslot << ct->depth_bits) | low_mask(ct->depth_bits);
            ProbeCounter pc;
            auto p = ct->tree.pred(q, stats ? &pc : nullptr);
            if (stats) stats->node_probes += pc.probes;
            if (!p) continue;
            uint64_t codeword;
            uint32_t length;
            ct->unpack(p->key, codeword, length);
            uint64_t padded = codeword << (m_lmax - length);
            if (!found || padded > best_padded) {
                found = true;
                best_padded = padded;
                best = {length, codeword};
            }
        }
    }
    if (!found) raise(Errc::corrupt, "lookup_depth: no class holds a predecessor");
    return best;
}

std::optional<uint64_t> PartitionedCodebook::first_of_depth(uint32_t len) const {
    if (len < 1 || len > m_lmax) raise(Errc::contract, "first_of_depth: out of range");
    if (!m_depth_occupied.get(len)) return std::nullopt;
    uint64_t occ_rank = m_depth_occupied.rank1(len);
    bool long_tailed = m_kind_long[occ_rank - 1];
    uint32_t cw = long_tailed ? m_w : m_wp;
    const ClassTree* ct = class_for(long_tailed, (len + cw - 1) / cw);
    uint32_t local = len - ct->len_lo;
    auto it = std::lower_bound(ct->local_depths.begin(), ct->local_depths.end(), local);
    uint64_t key = ct->tree.select(static_cast<uint64_t>(it - ct->local_depths.begin()) + 1);
    uint64_t codeword;
    uint32_t length;
    ct->unpack(key, codeword, length);
    if (length != len) raise(Errc::corrupt, "first_of_depth: class order broken");
    return codeword;
}

CodebookSpace PartitionedCodebook::space_bits() const {
    CodebookSpace sp;
    // local_depths is not charged: it is fully determined by D, the kind
    // bits and the class ranges, and is only materialized for fast select
    auto add = [&](const ClassTree& ct) {
        sp.stored_keys += ct.tree.size();
        sp.key_bits += ct.tree.key_bits();
        sp.tree_overhead_bits += ct.tree.overhead_bits();
    };
    for (const auto& ct : m_long) add(ct);
    for (const auto& ct : m_short) add(ct);
    sp.occupancy_bits = m_depth_occupied.payload_bits() + m_depth_occupied.directory_bits();
    sp.kind_bits = m_kind_long.size();
    sp.plain_first_bits = static_cast<uint64_t>(m_lmax) * m_lmax;
    sp.plain_pair_bits = m_kind_long.size() * (m_lmax + ceil_log2(m_lmax));
    return sp;
}

}  // namespace chc
