#pragma once

#include <cstdint>
#include <vector>

#include "chc/common.hpp"

namespace chc {

// splitmix64; constants spelled out so the stream is reproducible anywhere
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : m_state(seed) {}

    uint64_t next() {
        uint64_t z = (m_state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 mantissa bits
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, bound)
    uint64_t next_below(uint64_t bound) { return next() % bound; }

private:
    uint64_t m_state;
};

struct ZipfSpec {
    uint32_t sigma = 0;
    double alpha = 1.0;
    uint64_t n = 0;
    uint64_t seed = 0;
};

// n i.i.d. draws with P(rank r) proportional to r^-alpha, symbols 1..sigma,
// sampled by inverse CDF over the precomputed cumulative weights
std::vector<uint32_t> zipf_generate(const ZipfSpec& spec);

}  // namespace chc
