#include "chc/bitvector.hpp"

#include <algorithm>
#include <bit>

#include "chc/kernels.hpp"

namespace chc {

RsBitVector::RsBitVector(std::vector<uint64_t> words, uint64_t len)
    : m_words(std::move(words)), m_len(len) {
    // clear pad bits in the last word so complement scans stay honest
    if (m_len % 64 != 0 && !m_words.empty())
        m_words.back() &= low_mask(static_cast<uint32_t>(m_len % 64));
    uint64_t nsb = (m_len + k_sb_bits - 1) / k_sb_bits + 1;
    m_superblocks.assign(nsb, 0);
    uint64_t acc = 0;
    for (uint64_t w = 0; w < m_words.size(); ++w) {
        if (w % k_sb_words == 0) m_superblocks[w / k_sb_words] = acc;
        acc += static_cast<uint64_t>(std::popcount(m_words[w]));
    }
    m_superblocks.back() = acc;
    m_ones = acc;
}

uint64_t RsBitVector::rank1(uint64_t i, ProbeCounter* pc) const {
    if (i > m_len) raise(Errc::contract, "RsBitVector::rank1: out of range");
    count_probe(pc);
    if (i == 0) return 0;
    uint64_t sb = (i - 1) / k_sb_bits;
    uint64_t word = (i - 1) >> 6;
    uint64_t first_word = sb * k_sb_words;
    uint64_t cnt = m_superblocks[sb] +
                   kernels::popcount_words(m_words.data() + first_word, word - first_word);
    uint64_t rem = i - (word << 6);  // 1..64 bits of the final word
    cnt += static_cast<uint64_t>(std::popcount(m_words[word] & low_mask(static_cast<uint32_t>(rem))));
    return cnt;
}

uint64_t RsBitVector::select1(uint64_t j, ProbeCounter* pc) const {
    if (j > m_ones) raise(Errc::contract, "RsBitVector::select1: rank out of range");
    count_probe(pc);
    if (j == 0) return 0;
    // superblock with the j-th one: largest sb value < j
    uint64_t lo = 0, hi = m_superblocks.size() - 1;
    while (lo + 1 < hi) {
        uint64_t mid = (lo + hi) / 2;
        if (m_superblocks[mid] < j)
            lo = mid;
        else
            hi = mid;
    }
    uint64_t seen = m_superblocks[lo];
    uint64_t word = lo * k_sb_words;
    for (;; ++word) {
        uint64_t c = static_cast<uint64_t>(std::popcount(m_words[word]));
        if (seen + c >= j) break;
        seen += c;
    }
    uint32_t r = static_cast<uint32_t>(j - seen);
    return (word << 6) + kernels::select_in_word(m_words[word], r) + 1;
}

uint64_t RsBitVector::select0(uint64_t j, ProbeCounter* pc) const {
    if (j > zeros()) raise(Errc::contract, "RsBitVector::select0: rank out of range");
    count_probe(pc);
    if (j == 0) return 0;
    uint64_t lo = 0, hi = m_superblocks.size() - 1;
    auto zeros_before_sb = [&](uint64_t sb) {
        return std::min<uint64_t>(sb * k_sb_bits, m_len) - m_superblocks[sb];
    };
    while (lo + 1 < hi) {
        uint64_t mid = (lo + hi) / 2;
        if (zeros_before_sb(mid) < j)
            lo = mid;
        else
            hi = mid;
    }
    uint64_t seen = zeros_before_sb(lo);
    uint64_t word = lo * k_sb_words;
    for (;; ++word) {
        uint64_t bits_here = std::min<uint64_t>(64, m_len - (word << 6));
        uint64_t c = bits_here - static_cast<uint64_t>(std::popcount(m_words[word]));
        if (seen + c >= j) break;
        seen += c;
    }
    uint32_t r = static_cast<uint32_t>(j - seen);
    return (word << 6) + kernels::select_in_word(~m_words[word], r) + 1;
}

}  // namespace chc
