#include "chc/zipf.hpp"

#include <algorithm>
#include <cmath>

namespace chc {

std::vector<uint32_t> zipf_generate(const ZipfSpec& spec) {
    if (spec.sigma < 2) raise(Errc::contract, "zipf_generate: sigma must be >= 2");
    if (!(spec.alpha > 0.0)) raise(Errc::contract, "zipf_generate: alpha must be > 0");

    std::vector<double> cum(spec.sigma);
    double acc = 0.0;
    for (uint32_t r = 1; r <= spec.sigma; ++r) {
        acc += std::pow(static_cast<double>(r), -spec.alpha);
        cum[r - 1] = acc;
    }

    SplitMix64 rng(spec.seed);
    std::vector<uint32_t> out;
    out.reserve(spec.n);
    for (uint64_t i = 0; i < spec.n; ++i) {
        double u = rng.next_unit() * acc;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        uint32_t rank = static_cast<uint32_t>(it - cum.begin()) + 1;
        out.push_back(std::min(rank, spec.sigma));
    }
    return out;
}

}  // namespace chc
