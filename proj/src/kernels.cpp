#include "chc/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstring>
#include <vector>

namespace chc::kernels {

namespace {

// ---------------------------------------------------------------------------
// Scalar reference tier
// ---------------------------------------------------------------------------

template <typename T>
size_t count_leq_scalar(const T* keys, size_t n, T x) {
    size_t cnt = 0;
    for (size_t i = 0; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

uint64_t popcount_words_scalar(const uint64_t* words, size_t n) {
    uint64_t cnt = 0;
    for (size_t i = 0; i < n; ++i) cnt += static_cast<uint64_t>(std::popcount(words[i]));
    return cnt;
}

uint32_t select_in_word_scalar(uint64_t word, uint32_t r) {
    for (uint32_t i = 0; i < 64; ++i) {
        if ((word >> i) & 1) {
            if (--r == 0) return i;
        }
    }
    return 64;  // r exceeded popcount; callers guard against this
}

constexpr Impl k_scalar{
    "scalar",
    &count_leq_scalar<uint8_t>,
    &count_leq_scalar<uint16_t>,
    &count_leq_scalar<uint32_t>,
    &count_leq_scalar<uint64_t>,
    &popcount_words_scalar,
    &select_in_word_scalar,
};

// ---------------------------------------------------------------------------
// SWAR broadword tier
//
// count_leq spreads lanes so that each gets a spare high bit, then uses the
// fusion-tree comparison trick: (2^w + x) - k keeps the spare bit set exactly
// when k <= x, and no lane can borrow from its neighbour because the minuend
// is always larger than the subtrahend within the lane.
// ---------------------------------------------------------------------------

size_t count_leq_u8_swar(const uint8_t* keys, size_t n, uint8_t x) {
    const uint64_t lane_lo = 0x00FF00FF00FF00FFull;
    const uint64_t flag = 0x0100010001000100ull;
    const uint64_t qv = flag + 0x0001000100010001ull * x;
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint64_t w;
        std::memcpy(&w, keys + i, 8);
        uint64_t even = w & lane_lo;
        uint64_t odd = (w >> 8) & lane_lo;
        cnt += std::popcount((qv - even) & flag);
        cnt += std::popcount((qv - odd) & flag);
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

size_t count_leq_u16_swar(const uint16_t* keys, size_t n, uint16_t x) {
    const uint64_t lane_lo = 0x0000FFFF0000FFFFull;
    const uint64_t flag = 0x0001000000010000ull;
    const uint64_t qv = flag + 0x0000000100000001ull * x;
    size_t cnt = 0;
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        uint64_t w;
        std::memcpy(&w, keys + i, 8);
        uint64_t even = w & lane_lo;
        uint64_t odd = (w >> 16) & lane_lo;
        cnt += std::popcount((qv - even) & flag);
        cnt += std::popcount((qv - odd) & flag);
    }
    for (; i < n; ++i) cnt += keys[i] <= x;
    return cnt;
}

size_t count_leq_u32_swar(const uint32_t* keys, size_t n, uint32_t x) {
    // 64-bit lanes hold one 32-bit key plus the spare bit.
    const uint64_t qv = (uint64_t{1} << 32) + x;
    size_t cnt = 0;
    for (size_t i = 0; i < n; ++i) cnt += (qv - keys[i]) >> 32;
    return cnt;
}

uint64_t popcount_words_swar(const uint64_t* words, size_t n) {
    uint64_t cnt = 0;
    for (size_t i = 0; i < n; ++i) {
        uint64_t v = words[i];
        v = v - ((v >> 1) & 0x5555555555555555ull);
        v = (v & 0x3333333333333333ull) + ((v >> 2) & 0x3333333333333333ull);
        v = (v + (v >> 4)) & 0x0F0F0F0F0F0F0F0Full;
        cnt += (v * 0x0101010101010101ull) >> 56;
    }
    return cnt;
}

uint32_t select_in_word_swar(uint64_t word, uint32_t r) {
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

constexpr Impl k_swar{
    "swar",
    &count_leq_u8_swar,
    &count_leq_u16_swar,
    &count_leq_u32_swar,
    &count_leq_scalar<uint64_t>,  // no spare bit available at 64-bit lanes
    &popcount_words_swar,
    &select_in_word_swar,
};

}  // namespace

#if defined(CHC_KERNELS_AVX2)
const Impl& avx2_impl();
bool avx2_usable();
#endif
#if defined(CHC_KERNELS_NEON)
const Impl& neon_impl();
#endif

namespace {

std::vector<Impl> build_impls() {
    std::vector<Impl> impls{k_scalar, k_swar};
#if defined(CHC_KERNELS_NEON)
    impls.push_back(neon_impl());
#endif
#if defined(CHC_KERNELS_AVX2)
    if (avx2_usable()) impls.push_back(avx2_impl());
#endif
    return impls;
}

const std::vector<Impl>& impls() {
    static const std::vector<Impl> v = build_impls();
    return v;
}

std::atomic<const Impl*> g_active{nullptr};

}  // namespace

std::span<const Impl> implementations() { return {impls().data(), impls().size()}; }

const Impl& active() {
    const Impl* p = g_active.load(std::memory_order_acquire);
    if (!p) {
        p = &impls().back();
        g_active.store(p, std::memory_order_release);
    }
    return *p;
}

void select(const Impl& impl) { g_active.store(&impl, std::memory_order_release); }

}  // namespace chc::kernels
