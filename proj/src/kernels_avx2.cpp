#include "chc/kernels.hpp"

#include <bit>
#include <immintrin.h>

// AVX2 tier. Unsigned <= is done with min+cmpeq where an unsigned min exists
// (8/16/32-bit lanes); 64-bit lanes flip the sign bit and use the signed
// compare. Popcount uses the nibble-LUT shuffle; select uses PDEP.
namespace chc::kernels {

namespace {

size_t count_leq_u8_avx2(const uint8_t* keys, size_t n, uint8_t x) {
    const __m256i q = _mm256_set1_epi8(static_cast<char>(x));
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i k = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(keys + i));
        __m256i le = _mm256_cmpeq_epi8(_mm256_min_epu8(k, q), k);
        cnt += std::popcount(static_cast<uint32_t>(_mm256_movemask_epi8(le)));
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

size_t count_leq_u16_avx2(const uint16_t* keys, size_t n, uint16_t x) {
    const __m256i q = _mm256_set1_epi16(static_cast<short>(x));
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m256i k = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(keys + i));
        __m256i le = _mm256_cmpeq_epi16(_mm256_min_epu16(k, q), k);
        cnt += std::popcount(static_cast<uint32_t>(_mm256_movemask_epi8(le))) / 2;
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

size_t count_leq_u32_avx2(const uint32_t* keys, size_t n, uint32_t x) {
    const __m256i q = _mm256_set1_epi32(static_cast<int>(x));
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i k = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(keys + i));
        __m256i le = _mm256_cmpeq_epi32(_mm256_min_epu32(k, q), k);
        cnt += std::popcount(
            static_cast<uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(le))));
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

size_t count_leq_u64_avx2(const uint64_t* keys, size_t n, uint64_t x) {
    const __m256i sign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ull));
    const __m256i qb = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<long long>(x)), sign);
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i k = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(keys + i));
        __m256i kb = _mm256_xor_si256(k, sign);
        __m256i gt = _mm256_cmpgt_epi64(kb, qb);  // keys[i] > x
        uint32_t m = static_cast<uint32_t>(_mm256_movemask_pd(_mm256_castsi256_pd(gt)));
        cnt += 4 - std::popcount(m);
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

uint64_t popcount_words_avx2(const uint64_t* words, size_t n) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i nib = _mm256_set1_epi8(0x0F);
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
        __m256i lo = _mm256_shuffle_epi8(lut, _mm256_and_si256(v, nib));
        __m256i hi = _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi32(v, 4), nib));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi),
                                                    _mm256_setzero_si256()));
    }
    alignas(32) uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    uint64_t cnt = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) cnt += static_cast<uint64_t>(std::popcount(words[i]));
    return cnt;
}

uint32_t select_in_word_bmi2(uint64_t word, uint32_t r) {
    uint64_t hit = _pdep_u64(uint64_t{1} << (r - 1), word);
    return hit ? static_cast<uint32_t>(_tzcnt_u64(hit)) : 64;
}

constexpr Impl k_avx2{
    "avx2",
    &count_leq_u8_avx2,
    &count_leq_u16_avx2,
    &count_leq_u32_avx2,
    &count_leq_u64_avx2,
    &popcount_words_avx2,
    &select_in_word_bmi2,
};

}  // namespace

const Impl& avx2_impl() { return k_avx2; }

bool avx2_usable() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2");
}

}  // namespace chc::kernels
