#include "chc/codec.hpp"

#include <algorithm>
#include <cstring>

namespace chc {

namespace {

WaveletTree build_wavelet(const CanonicalCode& code) {
    return WaveletTree(code.lengths, code.max_len);
}

}  // namespace

Encoder::Encoder(const CanonicalCode& code)
    : m_code(code), m_wt(build_wavelet(code)), m_cb(code) {}

Encoder::Code Encoder::encode_symbol(uint32_t symbol) const {
    auto idx = m_code.dense_index(symbol);
    if (!idx) raise(Errc::contract, "encode_symbol: symbol not in code");
    uint32_t length = m_wt.access(*idx);
    uint64_t first = *m_cb.first_of_depth(length);
    uint64_t value = first + m_wt.rank(length, *idx) - 1;
    return {value, length};
}

Decoder::Decoder(const CanonicalCode& code, DecodeStrategy strategy)
    : m_code(code), m_strategy(strategy), m_wt(build_wavelet(code)) {
    switch (strategy) {
        case DecodeStrategy::partitioned:
            m_cb = PartitionedCodebook(code);
            break;
        case DecodeStrategy::bin_search:
        case DecodeStrategy::exp_search:
            for (uint32_t len = 1; len <= code.max_len; ++len)
                if (code.depth_occupied(len))
                    m_firsts.emplace_back(code.padded_first(len), len);
            break;
        case DecodeStrategy::tree_walk: {
            // explicit code tree; child > 0: internal node index, child <= 0:
            // leaf holding canonical index -child
            m_tree_left.assign(1, 0);
            m_tree_right.assign(1, 0);
            auto cws = code.codewords();
            for (size_t ci = 0; ci < cws.size(); ++ci) {
                int32_t node = 0;
                for (uint32_t b = cws[ci].length; b-- > 0;) {
                    bool bit = (cws[ci].value >> b) & 1;
                    std::vector<int32_t>& edges = bit ? m_tree_right : m_tree_left;
                    if (b == 0) {
                        edges[node] = -static_cast<int32_t>(ci);
                    } else {
                        int32_t next = edges[node];
                        if (next == 0) {
                            m_tree_left.push_back(0);
                            m_tree_right.push_back(0);
                            next = static_cast<int32_t>(m_tree_left.size() - 1);
                            edges[node] = next;
                        }
                        node = next;
                    }
                }
            }
            break;
        }
    }
}

Decoder::DepthHit Decoder::binsearch_depth(uint64_t x) const {
    // predecessor over the padded First list; steps = list comparisons
    uint32_t steps = 0;
    size_t lo = 0, hi = m_firsts.size();  // answer in (lo, hi]; index is 1-based count
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        ++steps;
        if (m_firsts[mid - 1].first <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    if (lo == 0) raise(Errc::corrupt, "binsearch_depth: no codeword prefixes the stream");
    return {m_firsts[lo - 1].second, m_firsts[lo - 1].first >> (m_code.max_len - m_firsts[lo - 1].second),
            steps};
}

Decoder::DepthHit Decoder::expsearch_depth(uint64_t x) const {
    const size_t m = m_firsts.size();
    uint32_t steps = 0;
    auto leq = [&](size_t pos) {  // 1-based probe
        ++steps;
        return m_firsts[pos - 1].first <= x;
    };
    if (m == 0 || !leq(1))
        raise(Errc::corrupt, "expsearch_depth: no codeword prefixes the stream");
    // gallop until the first failing probe brackets the predecessor
    size_t good = 1, probe = 2;
    while (probe <= m && leq(probe)) {
        good = probe;
        probe *= 2;
    }
    size_t lo = good, hi = std::min(probe, m + 1) - 1;  // answer in [lo, hi]
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (leq(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return {m_firsts[lo - 1].second,
            m_firsts[lo - 1].first >> (m_code.max_len - m_firsts[lo - 1].second), steps};
}

uint32_t Decoder::finish_symbol(BitCursor& cursor, uint32_t length, uint64_t first,
                                DecodeStats* stats) const {
    uint64_t value = cursor.read_bits(length);
    if (stats) ++stats->reads;
    if (value < first) raise(Errc::corrupt, "decode: codeword below First of its depth");
    uint64_t r = value - first + 1;
    if (r > m_wt.count(length)) raise(Errc::corrupt, "decode: codeword rank out of range");
    ProbeCounter pc;
    uint64_t pos = m_wt.select(length, r, stats ? &pc : nullptr);
    if (stats) stats->wt_probes += pc.probes;
    return m_code.sorted_symbols[pos - 1];
}

uint32_t Decoder::tree_walk(BitCursor& cursor, DecodeStats* stats) const {
    int32_t node = 0;
    if (m_code.sigma == 1) {  // single-symbol tree has one edge
        uint64_t bit = cursor.read_bits(1);
        if (stats) ++stats->reads;
        if (bit != 0) raise(Errc::corrupt, "tree_walk: bad bit for single-symbol code");
        return m_code.canonical_symbols[0];
    }
    while (true) {
        uint64_t bit = cursor.read_bits(1);
        if (stats) ++stats->reads;
        int32_t next = bit ? m_tree_right[node] : m_tree_left[node];
        if (next <= 0) return m_code.canonical_symbols[-next];
        node = next;
    }
}

uint32_t Decoder::decode_symbol(BitCursor& cursor, DecodeStats* stats) const {
    if (stats) ++stats->symbols;
    if (m_strategy == DecodeStrategy::tree_walk) return tree_walk(cursor, stats);

    uint64_t x = cursor.peek_bits(m_code.max_len);
    if (stats) ++stats->peeks;
    uint32_t length;
    uint64_t first;
    switch (m_strategy) {
        case DecodeStrategy::partitioned: {
            LookupStats ls;
            auto hit = m_cb.lookup_depth(x, stats ? &ls : nullptr);
            if (stats) {
                stats->consults += ls.consults;
                stats->pred_node_probes += ls.node_probes;
                stats->max_consults =
                    std::max(stats->max_consults, static_cast<uint32_t>(ls.consults));
                stats->max_pred_node_probes = std::max(
                    stats->max_pred_node_probes, static_cast<uint32_t>(ls.node_probes));
            }
            length = hit.length;
            first = hit.first;
            break;
        }
        case DecodeStrategy::bin_search: {
            auto hit = binsearch_depth(x);
            if (stats) {
                stats->bin_steps += hit.steps;
                stats->max_bin_steps = std::max(stats->max_bin_steps, hit.steps);
            }
            length = hit.length;
            first = hit.first;
            break;
        }
        case DecodeStrategy::exp_search: {
            auto hit = expsearch_depth(x);
            if (stats) {
                stats->exp_steps += hit.steps;
                stats->max_exp_steps = std::max(stats->max_exp_steps, hit.steps);
            }
            length = hit.length;
            first = hit.first;
            break;
        }
        default:
            raise(Errc::contract, "decode_symbol: bad strategy");
    }
    return finish_symbol(cursor, length, first, stats);
}

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 24));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t get_u32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
           static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

uint64_t get_u64(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

void write_header(const FileHeader& header, std::vector<uint8_t>& out) {
    out.insert(out.end(), header.magic, header.magic + 4);
    out.push_back(header.version);
    put_u64(out, header.n);
    put_u32(out, header.sigma_present);
    out.push_back(header.max_len);
    for (uint32_t c : header.count_per_len) put_u32(out, c);
    for (uint32_t s : header.symbols_in_canonical_order) put_u32(out, s);
}

FileHeader read_header(std::span<const uint8_t> bytes, size_t& payload_offset) {
    if (bytes.size() < 4) raise(Errc::truncated, "header: file shorter than magic");
    if (std::memcmp(bytes.data(), FileHeader::magic, 4) != 0)
        raise(Errc::bad_magic, "header: bad magic");
    if (bytes.size() < 18) raise(Errc::truncated, "header: truncated fixed fields");
    if (bytes[4] != FileHeader::version) raise(Errc::bad_version, "header: unknown version");

    FileHeader h;
    h.n = get_u64(bytes.data() + 5);
    h.sigma_present = get_u32(bytes.data() + 13);
    h.max_len = bytes[17];
    size_t need = 18 + 4 * static_cast<size_t>(h.max_len) + 4 * static_cast<size_t>(h.sigma_present);
    if (bytes.size() < need) raise(Errc::truncated, "header: truncated tables");
    uint64_t total = 0;
    for (uint32_t i = 0; i < h.max_len; ++i) {
        h.count_per_len.push_back(get_u32(bytes.data() + 18 + 4 * i));
        total += h.count_per_len.back();
    }
    for (uint32_t i = 0; i < h.sigma_present; ++i)
        h.symbols_in_canonical_order.push_back(
            get_u32(bytes.data() + 18 + 4 * static_cast<size_t>(h.max_len) + 4 * i));
    if (total != h.sigma_present) raise(Errc::bad_header, "header: counts do not sum to sigma");
    if (h.sigma_present == 0 && h.n > 0) raise(Errc::bad_header, "header: symbols missing");
    if (h.sigma_present > 0 && h.max_len == 0) raise(Errc::bad_header, "header: lmax zero");
    if (h.max_len > 0 && h.count_per_len[h.max_len - 1] == 0)
        raise(Errc::bad_header, "header: deepest level empty");
    payload_offset = need;
    return h;
}

CanonicalCode code_from_header(const FileHeader& header) {
    // Kraft equality over the counts, with the single-symbol exception
    bool degenerate = header.sigma_present == 1 && header.max_len == 1;
    if (!degenerate && header.max_len > 0) {
        using u128 = unsigned __int128;
        u128 kraft = 0;
        const u128 one_full = u128{1} << header.max_len;
        for (uint32_t len = 1; len <= header.max_len; ++len) {
            kraft += u128{header.count_per_len[len - 1]} << (header.max_len - len);
            if (kraft > one_full) raise(Errc::bad_header, "header: Kraft sum exceeds 1");
        }
        if (kraft != one_full) raise(Errc::bad_header, "header: Kraft sum below 1");
    }

    // lengths per symbol in canonical order -> CodeLengths keyed by symbol id
    CodeLengths cl;
    cl.symbols.resize(header.sigma_present);
    cl.lengths.resize(header.sigma_present);
    std::vector<std::pair<uint32_t, uint8_t>> by_symbol;
    by_symbol.reserve(header.sigma_present);
    size_t idx = 0;
    for (uint32_t len = 1; len <= header.max_len; ++len)
        for (uint32_t r = 0; r < header.count_per_len[len - 1]; ++r, ++idx)
            by_symbol.emplace_back(header.symbols_in_canonical_order[idx],
                                   static_cast<uint8_t>(len));
    std::sort(by_symbol.begin(), by_symbol.end());
    for (size_t i = 0; i < by_symbol.size(); ++i) {
        if (i > 0 && by_symbol[i].first == by_symbol[i - 1].first)
            raise(Errc::bad_header, "header: duplicate symbol");
        cl.symbols[i] = by_symbol[i].first;
        cl.lengths[i] = by_symbol[i].second;
    }
    cl.max_len = header.max_len;
    return canonicalize(cl);
}

std::vector<uint8_t> encode_stream(std::span<const uint32_t> symbols) {
    std::vector<uint8_t> out;
    FileHeader h;
    h.n = symbols.size();
    if (symbols.empty()) {
        write_header(h, out);
        return out;
    }

    FrequencyTable ft = FrequencyTable::from_symbols(symbols);
    CanonicalCode code = canonicalize(compute_lengths(ft));
    h.sigma_present = code.sigma;
    h.max_len = code.max_len;
    h.count_per_len = code.count_per_len;
    h.symbols_in_canonical_order = code.canonical_symbols;
    write_header(h, out);

    Encoder enc(code);
    BitWriter w;
    for (uint32_t s : symbols) {
        auto c = enc.encode_symbol(s);
        w.write_bits(c.value, c.length);
    }
    std::vector<uint8_t> payload = w.finish();
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::vector<uint32_t> decode_stream(std::span<const uint8_t> bytes, DecodeStrategy strategy,
                                    DecodeStats* stats) {
    size_t payload_offset = 0;
    FileHeader h = read_header(bytes, payload_offset);
    std::vector<uint32_t> out;
    if (h.n == 0) return out;

    std::span<const uint8_t> payload = bytes.subspan(payload_offset);
    // every codeword is at least one bit, so n cannot exceed the payload
    if (h.n > payload.size() * 8)
        raise(Errc::truncated, "decode: payload too short for the declared symbol count");

    CanonicalCode code = code_from_header(h);
    Decoder dec(code, strategy);
    BitCursor cursor(payload, payload.size() * 8);
    out.reserve(h.n);
    for (uint64_t i = 0; i < h.n; ++i) out.push_back(dec.decode_symbol(cursor, stats));
    return out;
}

}  // namespace chc
