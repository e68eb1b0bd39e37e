#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Data-parallel primitives behind the query hot paths: counting keys <= x
// inside a predecessor-tree node, bulk popcount for rank directories, and
// in-word select. Every primitive has a scalar reference implementation;
// wider tiers (SWAR broadword, AVX2, NEON) are selected at runtime and must
// agree with the scalar tier bit for bit (see tests/test_kernels.cpp).
namespace chc::kernels {

struct Impl {
    const char* name;
    size_t (*count_leq_u8)(const uint8_t* keys, size_t n, uint8_t x);
    size_t (*count_leq_u16)(const uint16_t* keys, size_t n, uint16_t x);
    size_t (*count_leq_u32)(const uint32_t* keys, size_t n, uint32_t x);
    size_t (*count_leq_u64)(const uint64_t* keys, size_t n, uint64_t x);
    uint64_t (*popcount_words)(const uint64_t* words, size_t n);
    // position (0-based, from the LSB) of the r-th set bit, r in 1..popcount(word)
    uint32_t (*select_in_word)(uint64_t word, uint32_t r);
};

// All implementations compiled in and usable on this CPU, scalar first.
std::span<const Impl> implementations();

// The tier the library dispatches to (the widest usable one by default).
const Impl& active();

// Override dispatch, e.g. to bench one tier against another.
void select(const Impl& impl);

inline size_t count_leq(const uint8_t* keys, size_t n, uint8_t x) {
    return active().count_leq_u8(keys, n, x);
}
inline size_t count_leq(const uint16_t* keys, size_t n, uint16_t x) {
    return active().count_leq_u16(keys, n, x);
}
inline size_t count_leq(const uint32_t* keys, size_t n, uint32_t x) {
    return active().count_leq_u32(keys, n, x);
}
inline size_t count_leq(const uint64_t* keys, size_t n, uint64_t x) {
    return active().count_leq_u64(keys, n, x);
}
inline uint64_t popcount_words(const uint64_t* words, size_t n) {
    return active().popcount_words(words, n);
}
inline uint32_t select_in_word(uint64_t word, uint32_t r) {
    return active().select_in_word(word, r);
}

}  // namespace chc::kernels
