#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chc/bitvector.hpp"
#include "chc/common.hpp"

namespace chc {

// Level-wise binary wavelet tree over a sequence of values in 1..alphabet.
// ceil(lg alphabet) levels of sigma-bit vectors; node boundaries per level are
// derived from the value histogram, so every operation costs one rank or
// select probe per level.
class WaveletTree {
public:
    WaveletTree() = default;
    WaveletTree(std::span<const uint8_t> values, uint32_t alphabet);

    uint64_t size() const { return m_size; }
    uint32_t alphabet() const { return m_alphabet; }
    uint32_t levels() const { return m_levels; }

    // value at 1-based position pos
    uint32_t access(uint64_t pos, ProbeCounter* pc = nullptr) const;
    // occurrences of value among the first pos positions
    uint64_t rank(uint32_t value, uint64_t pos, ProbeCounter* pc = nullptr) const;
    // position of the r-th occurrence of value, r in 1..count(value)
    uint64_t select(uint32_t value, uint64_t r, ProbeCounter* pc = nullptr) const;

    uint64_t count(uint32_t value) const {
        if (value < 1 || value > m_alphabet) raise(Errc::contract, "WaveletTree: bad value");
        return m_value_count[value - 1];
    }

    uint64_t payload_bits() const;
    uint64_t directory_bits() const;

private:
    uint32_t m_alphabet = 0;
    uint32_t m_levels = 0;
    uint64_t m_size = 0;
    std::vector<RsBitVector> m_bv;  // one per level
    // node starts and ones-before-start per level, indexed by value prefix;
    // recomputable from the histogram, kept for O(1) node lookup
    std::vector<std::vector<uint64_t>> m_node_start;
    std::vector<std::vector<uint64_t>> m_node_ones;
    std::vector<uint64_t> m_value_count;
};

}  // namespace chc
