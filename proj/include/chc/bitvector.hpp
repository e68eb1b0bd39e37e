#pragma once

#include <cstdint>
#include <vector>

#include "chc/common.hpp"

namespace chc {

// Bit vector with rank/select support. Positions are 1-based to match the
// usual rank/select conventions: rank1(i) counts ones among the first i bits,
// select1(j) is the position of the j-th one, and select1(0) == 0.
//
// Directory: one absolute counter per 512-bit superblock (12.5% overhead);
// select binary-searches the counters and scans at most eight words.
class RsBitVector {
public:
    class Builder {
    public:
        void push(bool bit) {
            if (m_len % 64 == 0) m_words.push_back(0);
            if (bit) m_words.back() |= uint64_t{1} << (m_len % 64);
            ++m_len;
        }
        RsBitVector build() { return RsBitVector(std::move(m_words), m_len); }

    private:
        std::vector<uint64_t> m_words;
        uint64_t m_len = 0;
    };

    RsBitVector() = default;

    uint64_t size() const { return m_len; }
    uint64_t ones() const { return m_ones; }
    uint64_t zeros() const { return m_len - m_ones; }

    // bit at 1-based position i
    bool get(uint64_t i) const {
        if (i < 1 || i > m_len) raise(Errc::contract, "RsBitVector::get: out of range");
        return (m_words[(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
    }

    uint64_t rank1(uint64_t i, ProbeCounter* pc = nullptr) const;
    uint64_t rank0(uint64_t i, ProbeCounter* pc = nullptr) const {
        return i - rank1(i, pc);
    }
    uint64_t select1(uint64_t j, ProbeCounter* pc = nullptr) const;
    uint64_t select0(uint64_t j, ProbeCounter* pc = nullptr) const;

    uint64_t payload_bits() const { return m_len; }
    // information content of the rank directory: one ones-count per 512-bit
    // superblock at ceil(lg(m+1)) bits (the in-memory layout pads counters to
    // whole words for speed; audits report the content)
    uint64_t directory_bits() const { return m_superblocks.size() * ceil_log2(m_len + 1); }

private:
    RsBitVector(std::vector<uint64_t> words, uint64_t len);

    static constexpr uint64_t k_sb_bits = 512;
    static constexpr uint64_t k_sb_words = k_sb_bits / 64;

    std::vector<uint64_t> m_words;
    std::vector<uint64_t> m_superblocks;  // ones before superblock k
    uint64_t m_len = 0;
    uint64_t m_ones = 0;
};

}  // namespace chc
