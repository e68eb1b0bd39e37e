#include "chc/kernels.hpp"

#include <arm_neon.h>
#include <bit>

namespace chc::kernels {

namespace {

size_t count_leq_u8_neon(const uint8_t* keys, size_t n, uint8_t x) {
    const uint8x16_t q = vdupq_n_u8(x);
    const uint8x16_t one = vdupq_n_u8(1);
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t k = vld1q_u8(keys + i);
        uint8x16_t le = vcleq_u8(k, q);
        cnt += vaddvq_u8(vandq_u8(le, one));
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

size_t count_leq_u16_neon(const uint16_t* keys, size_t n, uint16_t x) {
    const uint16x8_t q = vdupq_n_u16(x);
    const uint16x8_t one = vdupq_n_u16(1);
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint16x8_t k = vld1q_u16(keys + i);
        cnt += vaddvq_u16(vandq_u16(vcleq_u16(k, q), one));
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

size_t count_leq_u32_neon(const uint32_t* keys, size_t n, uint32_t x) {
    const uint32x4_t q = vdupq_n_u32(x);
    const uint32x4_t one = vdupq_n_u32(1);
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        uint32x4_t k = vld1q_u32(keys + i);
        cnt += vaddvq_u32(vandq_u32(vcleq_u32(k, q), one));
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

size_t count_leq_u64_neon(const uint64_t* keys, size_t n, uint64_t x) {
    const uint64x2_t q = vdupq_n_u64(x);
    const uint64x2_t one = vdupq_n_u64(1);
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t k = vld1q_u64(keys + i);
        cnt += vaddvq_u64(vandq_u64(vcleq_u64(k, q), one));
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

uint64_t popcount_words_neon(const uint64_t* words, size_t n) {
    uint64_t cnt = 0;
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t v = vreinterpretq_u8_u64(vld1q_u64(words + i));
        cnt += vaddvq_u8(vcntq_u8(v));
    }
    for (; i < n; ++i) cnt += static_cast<uint64_t>(std::popcount(words[i]));
    return cnt;
}

uint32_t select_in_word_portable(uint64_t word, uint32_t r) {
    uint32_t base = 0;
    while (true) {
        uint32_t c = static_cast<uint32_t>(std::popcount(word & 0xFFull));
        if (r <= c) break;
        r -= c;
        word >>= 8;
        base += 8;
        if (base >= 64) return 64;
    }
    uint32_t i = 0;
    for (;; ++i) {
        if ((word >> i) & 1) {
            if (--r == 0) return base + i;
        }
    }
}

constexpr Impl k_neon{
    "neon",
    &count_leq_u8_neon,
    &count_leq_u16_neon,
    &count_leq_u32_neon,
    &count_leq_u64_neon,
    &popcount_words_neon,
    &select_in_word_portable,
};

}  // namespace

const Impl& neon_impl() { return k_neon; }

}  // namespace chc::kernels
