#include "chc/wavelet_tree.hpp"

#include <algorithm>

namespace chc {

WaveletTree::WaveletTree(std::span<const uint8_t> values, uint32_t alphabet)
    : m_alphabet(alphabet), m_levels(ceil_log2(alphabet)), m_size(values.size()) {
    if (alphabet == 0 || alphabet > 256) raise(Errc::contract, "WaveletTree: bad alphabet");
    m_value_count.assign(alphabet, 0);
    for (uint8_t v : values) {
        if (v < 1 || v > alphabet) raise(Errc::contract, "WaveletTree: value out of range");
        ++m_value_count[v - 1];
    }
    if (m_levels == 0) return;

    // node starts per level from the histogram; level m_levels holds the
    // leaf runs
    m_node_start.resize(m_levels + 1);
    m_node_ones.resize(m_levels);
    for (uint32_t k = 0; k <= m_levels; ++k) {
        uint32_t nodes = uint32_t{1} << k;
        uint32_t span = uint32_t{1} << (m_levels - k);  // values per node
        m_node_start[k].assign(nodes + 1, 0);
        uint64_t acc = 0;
        for (uint32_t p = 0; p < nodes; ++p) {
            m_node_start[k][p] = acc;
            for (uint32_t v = p * span; v < (p + 1) * span && v < m_alphabet; ++v)
                acc += m_value_count[v];
        }
        m_node_start[k][nodes] = acc;
    }
    for (uint32_t k = 0; k < m_levels; ++k) {
        uint32_t nodes = uint32_t{1} << k;
        uint32_t span = uint32_t{1} << (m_levels - k);
        m_node_ones[k].assign(nodes, 0);
        uint64_t acc = 0;
        for (uint32_t p = 0; p < nodes; ++p) {
            m_node_ones[k][p] = acc;
            for (uint32_t v = p * span; v < (p + 1) * span && v < m_alphabet; ++v)
                if ((v >> (m_levels - 1 - k)) & 1) acc += m_value_count[v];
        }
    }

    std::vector<uint8_t> cur(values.begin(), values.end());
    for (auto& v : cur) --v;  // store value-1 internally
    std::vector<uint8_t> next(cur.size());
    m_bv.reserve(m_levels);
    for (uint32_t k = 0; k < m_levels; ++k) {
        uint32_t shift = m_levels - 1 - k;
        RsBitVector::Builder b;
        for (uint8_t v : cur) b.push((v >> shift) & 1);
        m_bv.push_back(b.build());
        if (k + 1 < m_levels) {
            // stable counting sort by (k+1)-bit prefix = partition every node
            std::vector<uint64_t> cursor = m_node_start[k + 1];
            for (uint8_t v : cur) {
                uint32_t node = v >> shift;
                next[cursor[node]++] = v;
            }
            cur.swap(next);
        }
    }
}

uint32_t WaveletTree::access(uint64_t pos, ProbeCounter* pc) const {
    if (pos < 1 || pos > m_size) raise(Errc::contract, "WaveletTree::access: out of range");
    if (m_levels == 0) return 1;
    uint64_t i = pos - 1;  // 0-based within the level
    uint32_t p = 0, v = 0;
    for (uint32_t k = 0; k < m_levels; ++k) {
        uint64_t s = m_node_start[k][p];
        uint64_t o = m_node_ones[k][p];
        uint64_t ones_before = m_bv[k].rank1(i, pc) - o;
        bool b = m_bv[k].get(i + 1);
        if (b)
            i = m_node_start[k + 1][2 * p + 1] + ones_before;
        else
            i = m_node_start[k + 1][2 * p] + (i - s - ones_before);
        p = 2 * p + b;
        v = (v << 1) | static_cast<uint32_t>(b);
    }
    return v + 1;
}

uint64_t WaveletTree::rank(uint32_t value, uint64_t pos, ProbeCounter* pc) const {
    if (value < 1 || value > m_alphabet) raise(Errc::contract, "WaveletTree::rank: bad value");
    if (pos > m_size) raise(Errc::contract, "WaveletTree::rank: out of range");
    if (m_levels == 0) return pos;
    uint32_t v = value - 1;
    uint64_t i = pos;
    uint32_t p = 0;
    for (uint32_t k = 0; k < m_levels; ++k) {
        uint64_t s = m_node_start[k][p];
        uint64_t o = m_node_ones[k][p];
        uint64_t ones_in_prefix = m_bv[k].rank1(s + i, pc) - o;
        uint32_t b = (v >> (m_levels - 1 - k)) & 1;
        i = b ? ones_in_prefix : i - ones_in_prefix;
        p = 2 * p + b;
    }
    return i;
}

uint64_t WaveletTree::select(uint32_t value, uint64_t r, ProbeCounter* pc) const {
    if (value < 1 || value > m_alphabet) raise(Errc::contract, "WaveletTree::select: bad value");
    if (r < 1 || r > m_value_count[value - 1])
        raise(Errc::contract, "WaveletTree::select: rank out of range");
    if (m_levels == 0) return r;
    uint32_t v = value - 1;
    uint64_t i = r;
    for (uint32_t k = m_levels; k-- > 0;) {
        uint32_t p = v >> (m_levels - k);
        uint32_t b = (v >> (m_levels - 1 - k)) & 1;
        uint64_t s = m_node_start[k][p];
        uint64_t o = m_node_ones[k][p];
        uint64_t g = b ? m_bv[k].select1(o + i, pc) : m_bv[k].select0((s - o) + i, pc);
        i = g - s;
    }
    return i;
}

uint64_t WaveletTree::payload_bits() const {
    uint64_t bits = 0;
    for (const auto& bv : m_bv) bits += bv.payload_bits();
    return bits;
}

uint64_t WaveletTree::directory_bits() const {
    uint64_t bits = 0;
    for (const auto& bv : m_bv) bits += bv.directory_bits();
    return bits;
}

}  // namespace chc
