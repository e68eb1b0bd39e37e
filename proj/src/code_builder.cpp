#include "chc/code_builder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>

namespace chc {

FrequencyTable FrequencyTable::from_bytes(std::span<const uint8_t> text) {
    std::array<uint64_t, 256> hist{};
    for (uint8_t b : text) ++hist[b];
    FrequencyTable ft;
    for (uint32_t s = 0; s < 256; ++s) {
        if (hist[s] > 0) {
            ft.symbols.push_back(s);
            ft.counts.push_back(hist[s]);
            ft.total += hist[s];
        }
    }
    return ft;
}

FrequencyTable FrequencyTable::from_symbols(std::span<const uint32_t> text) {
    std::vector<uint32_t> sorted(text.begin(), text.end());
    std::sort(sorted.begin(), sorted.end());
    FrequencyTable ft;
    for (size_t i = 0; i < sorted.size();) {
        size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        ft.symbols.push_back(sorted[i]);
        ft.counts.push_back(j - i);
        ft.total += j - i;
        i = j;
    }
    return ft;
}

std::optional<uint32_t> CanonicalCode::dense_index(uint32_t symbol) const {
    auto it = std::lower_bound(sorted_symbols.begin(), sorted_symbols.end(), symbol);
    if (it == sorted_symbols.end() || *it != symbol) return std::nullopt;
    return static_cast<uint32_t>(it - sorted_symbols.begin()) + 1;
}

std::vector<CanonicalCode::Codeword> CanonicalCode::codewords() const {
    std::vector<Codeword> out;
    out.reserve(sigma);
    size_t idx = 0;
    for (uint32_t len = 1; len <= max_len; ++len) {
        uint32_t cnt = count_per_len[len - 1];
        for (uint32_t r = 0; r < cnt; ++r, ++idx) {
            out.push_back({canonical_symbols[idx], first[len - 1] + r,
                           static_cast<uint8_t>(len)});
        }
    }
    return out;
}

TailSplit tail_split(uint64_t codeword, uint32_t length) {
    if (length == 0 || length > 64) raise(Errc::contract, "tail_split: bad length");
    uint64_t inverted = ~codeword & low_mask(length);
    TailSplit ts;
    if (inverted == 0) {
        ts.ones_run = length;  // all ones, empty tail
        return ts;
    }
    uint32_t width = static_cast<uint32_t>(std::bit_width(inverted));
    ts.ones_run = length - width;
    ts.tail_len = width;
    ts.tail = codeword & low_mask(width);
    return ts;
}

uint32_t floor_log_phi(uint64_t n) {
    if (n == 0) raise(Errc::contract, "floor_log_phi: n == 0");
    const long double phi = (1.0L + sqrtl(5.0L)) / 2.0L;
    uint32_t k = 0;
    long double p = 1.0L;
    while (p * phi <= static_cast<long double>(n)) {
        p *= phi;
        ++k;
    }
    return k;
}

CodeLengths compute_lengths(const FrequencyTable& freqs) {
    const size_t sigma = freqs.symbols.size();
    if (sigma == 0) raise(Errc::contract, "compute_lengths: empty frequency table");
    if (freqs.counts.size() != sigma)
        raise(Errc::contract, "compute_lengths: malformed table");

    CodeLengths out;
    out.symbols = freqs.symbols;
    out.lengths.assign(sigma, 0);
    if (sigma == 1) {  // degenerate single-symbol code
        out.lengths[0] = 1;
        out.max_len = 1;
        return out;
    }

    // leaves sorted ascending by (count, symbol id)
    std::vector<uint32_t> order(sigma);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (freqs.counts[a] != freqs.counts[b]) return freqs.counts[a] < freqs.counts[b];
        return freqs.symbols[a] < freqs.symbols[b];
    });

    // two-queue merge; queue of merged nodes stays sorted because merge
    // weights are produced in non-decreasing order
    struct Node {
        uint64_t weight;
        int32_t left, right;  // node indices; < sigma are leaves
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * sigma);
    for (size_t i = 0; i < sigma; ++i)
        nodes.push_back({freqs.counts[order[i]], -1, -1});
    size_t leaf_next = 0;
    std::deque<int32_t> merged;

    auto take_min = [&]() -> int32_t {
        bool leaf_ok = leaf_next < sigma;
        bool node_ok = !merged.empty();
        // tie at equal weight: leaf first
        if (leaf_ok &&
            (!node_ok || nodes[leaf_next].weight <= nodes[merged.front()].weight)) {
            return static_cast<int32_t>(leaf_next++);
        }
        int32_t id = merged.front();
        merged.pop_front();
        return id;
    };

    for (size_t step = 0; step + 1 < sigma; ++step) {
        int32_t a = take_min();
        int32_t b = take_min();
        nodes.push_back({nodes[a].weight + nodes[b].weight, a, b});
        merged.push_back(static_cast<int32_t>(nodes.size() - 1));
    }

    // depth assignment by walking down from the root
    std::vector<uint32_t> depth(nodes.size(), 0);
    for (size_t i = nodes.size(); i-- > 0;) {
        const Node& nd = nodes[i];
        if (nd.left >= 0) {
            depth[nd.left] = depth[i] + 1;
            depth[nd.right] = depth[i] + 1;
        }
    }
    uint32_t max_len = 0;
    for (size_t i = 0; i < sigma; ++i) {
        out.lengths[order[i]] = static_cast<uint8_t>(depth[i]);
        max_len = std::max(max_len, depth[i]);
    }
    if (max_len + ceil_log2(max_len) > 64)
        raise(Errc::unsupported, "compute_lengths: packed (codeword, length) exceeds 64 bits");
    out.max_len = static_cast<uint8_t>(max_len);
    return out;
}

CanonicalCode canonicalize(const CodeLengths& lengths) {
    const size_t sigma = lengths.symbols.size();
    if (sigma == 0) raise(Errc::contract, "canonicalize: empty code");
    if (lengths.lengths.size() != sigma) raise(Errc::contract, "canonicalize: malformed input");

    uint32_t max_len = 0;
    for (uint8_t l : lengths.lengths) {
        if (l == 0) raise(Errc::contract, "canonicalize: zero length");
        max_len = std::max<uint32_t>(max_len, l);
    }
    if (max_len + ceil_log2(max_len) > 64)
        raise(Errc::unsupported, "canonicalize: packed (codeword, length) exceeds 64 bits");

    // Kraft equality in integers: sum of 2^(max_len - l) must be 2^max_len.
    // The single-symbol code L = [1] is accepted as a special case.
    bool degenerate = sigma == 1 && lengths.lengths[0] == 1;
    if (!degenerate) {
        uint64_t kraft = 0;
        for (uint8_t l : lengths.lengths) {
            kraft += uint64_t{1} << (max_len - l);
            if (kraft > (uint64_t{1} << max_len))
                raise(Errc::contract, "canonicalize: Kraft sum exceeds 1");
        }
        if (kraft != uint64_t{1} << max_len)
            raise(Errc::contract, "canonicalize: Kraft sum below 1");
    }

    CanonicalCode code;
    code.sigma = static_cast<uint32_t>(sigma);
    code.max_len = static_cast<uint8_t>(max_len);
    code.count_per_len.assign(max_len, 0);
    for (uint8_t l : lengths.lengths) ++code.count_per_len[l - 1];

    code.canonical_symbols.resize(sigma);
    std::vector<uint32_t> order(sigma);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (lengths.lengths[a] != lengths.lengths[b])
            return lengths.lengths[a] < lengths.lengths[b];
        return lengths.symbols[a] < lengths.symbols[b];
    });
    for (size_t i = 0; i < sigma; ++i) code.canonical_symbols[i] = lengths.symbols[order[i]];

    // First[l+1] = (First[l] + numl[l]) * 2, generalized over unoccupied gaps
    code.first.assign(max_len, 0);
    uint64_t next = 0;
    for (uint32_t len = 1; len <= max_len; ++len) {
        code.first[len - 1] = next;
        next = (next + code.count_per_len[len - 1]) << 1;
    }

    code.sorted_symbols = lengths.symbols;
    code.lengths = lengths.lengths;
    return code;
}

namespace {

void check(bool cond, bool& flag, std::vector<std::string>& violations, std::string msg) {
    if (!cond) {
        flag = false;
        violations.push_back(std::move(msg));
    }
}

std::string bits_to_string(uint64_t value, uint32_t len) {
    std::string s;
    for (uint32_t i = len; i-- > 0;) s += ((value >> i) & 1) ? '1' : '0';
    return s;
}

}  // namespace

ValidationReport validate_assignment(std::span<const uint64_t> codewords,
                                     std::span<const uint8_t> lengths, uint32_t sigma,
                                     uint64_t total_occurrences) {
    ValidationReport rep;
    rep.sigma = sigma;
    rep.kraft_ok = rep.strict_increase_ok = rep.nondecreasing_ok = rep.lmax_bound_ok =
        rep.tail_bound_ok = rep.deepest_all_ones_ok = rep.shallowest_all_zeros_ok = true;
    if (codewords.empty()) return rep;

    uint32_t lmax = 0;
    for (uint8_t l : lengths) lmax = std::max<uint32_t>(lmax, l);
    rep.lmax = static_cast<uint8_t>(lmax);

    bool degenerate = sigma == 1;
    if (!degenerate && lmax < 64) {
        uint64_t kraft = 0;
        bool overflow = false;
        for (uint8_t l : lengths) {
            kraft += uint64_t{1} << (lmax - l);
            if (kraft > (uint64_t{1} << lmax)) {
                overflow = true;
                break;
            }
        }
        check(!overflow && kraft == (uint64_t{1} << lmax), rep.kraft_ok, rep.violations,
              "Kraft sum is not exactly 1");
    }

    for (size_t i = 0; i + 1 < codewords.size(); ++i) {
        uint64_t a = codewords[i] << (lmax - lengths[i]);
        uint64_t b = codewords[i + 1] << (lmax - lengths[i + 1]);
        check(a < b, rep.strict_increase_ok, rep.violations,
              "codeword " + bits_to_string(codewords[i + 1], lengths[i + 1]) +
                  " does not increase past " + bits_to_string(codewords[i], lengths[i]));
        check(lengths[i] <= lengths[i + 1], rep.nondecreasing_ok, rep.violations,
              "length decreases at codeword " + bits_to_string(codewords[i + 1], lengths[i + 1]));
    }

    if (!degenerate && total_occurrences > 0) {
        rep.lmax_cap = std::min<uint32_t>(sigma - 1, floor_log_phi(total_occurrences));
        check(lmax <= rep.lmax_cap, rep.lmax_bound_ok, rep.violations,
              "max length " + std::to_string(lmax) + " exceeds cap " +
                  std::to_string(rep.lmax_cap));
    }

    if (!degenerate) {
        uint32_t tail_cap = ceil_log2(sigma);
        for (size_t i = 0; i < codewords.size(); ++i) {
            TailSplit ts = tail_split(codewords[i], lengths[i]);
            check(ts.tail_len == 0 || ts.tail_len <= tail_cap, rep.tail_bound_ok,
                  rep.violations,
                  "codeword " + bits_to_string(codewords[i], lengths[i]) + " has tail " +
                      std::to_string(ts.tail_len) + " > ceil(lg sigma) = " +
                      std::to_string(tail_cap));
        }
    }

    if (!degenerate) {
        uint64_t deepest = codewords.back();
        check(deepest == low_mask(lengths.back()), rep.deepest_all_ones_ok, rep.violations,
              "deepest codeword " + bits_to_string(deepest, lengths.back()) + " is not all ones");
    }
    check(codewords.front() == 0, rep.shallowest_all_zeros_ok, rep.violations,
          "shallowest codeword is not all zeros");
    return rep;
}

ValidationReport validate(const CanonicalCode& code, uint64_t total_occurrences) {
    auto cws = code.codewords();
    std::vector<uint64_t> values(cws.size());
    std::vector<uint8_t> lens(cws.size());
    for (size_t i = 0; i < cws.size(); ++i) {
        values[i] = cws[i].value;
        lens[i] = cws[i].length;
    }
    ValidationReport rep = validate_assignment(values, lens, code.sigma, total_occurrences);

    // Census over the leftmost codeword of each occupied depth: census[s-1]
    // counts depths whose First has tail_len >= s. The per-depth reading is
    // the one the partition construction relies on; a census over all
    // codewords is unbounded on balanced codes.
    uint32_t max_tail = 0;
    std::vector<uint32_t> tails;
    for (uint32_t len = 1; len <= code.max_len; ++len) {
        if (!code.depth_occupied(len)) continue;
        TailSplit ts = tail_split(code.first_of(len), len);
        tails.push_back(ts.tail_len);
        max_tail = std::max(max_tail, ts.tail_len);
    }
    rep.census.assign(max_tail, 0);
    for (uint32_t t : tails)
        for (uint32_t s = 1; s <= t; ++s) ++rep.census[s - 1];
    rep.census_max_ratio = 0.0;
    for (uint32_t s = 1; s <= max_tail; ++s) {
        double ratio = static_cast<double>(rep.census[s - 1]) *
                       static_cast<double>(uint64_t{1} << s) / code.sigma;
        rep.census_max_ratio = std::max(rep.census_max_ratio, ratio);
    }
    return rep;
}

}  // namespace chc
