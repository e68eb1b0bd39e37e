#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "chc/common.hpp"
#include "chc/kernels.hpp"

namespace chc {

// Static predecessor structure over strictly increasing keys of bounded
// width. Organized as a 16-way tree: leaves hold the keys, upper levels hold
// per-child subtree maxima, and every node carries the prefix sums of its
// child subtree sizes so rank and select run in the same descent. In-node
// search is a branch-free parallel comparison (chc::kernels) over keys packed
// in the narrowest lane that fits key_width.
//
// This stands in for a word-level fusion tree: the contract (pred/rank/select
// plus an audited probe bound of ceil(log16 m) + 1 node visits per query) is
// what the code dictionary consumes.
class PredSet {
public:
    static constexpr uint32_t branching = 16;

    struct Pred {
        uint64_t key;
        uint64_t rank;  // 1-based index of key
    };

    PredSet() = default;

    PredSet(std::span<const uint64_t> keys, uint32_t key_width) : m_width(key_width) {
        if (key_width == 0 || key_width > 64) raise(Errc::contract, "PredSet: bad key width");
        for (size_t i = 0; i < keys.size(); ++i) {
            if (key_width < 64 && keys[i] > low_mask(key_width))
                raise(Errc::contract, "PredSet: key wider than key_width");
            if (i > 0 && keys[i] <= keys[i - 1])
                raise(Errc::contract, "PredSet: keys not strictly increasing");
        }
        if (key_width <= 8)
            m_rep.emplace<Rep<uint8_t>>(keys);
        else if (key_width <= 16)
            m_rep.emplace<Rep<uint16_t>>(keys);
        else if (key_width <= 32)
            m_rep.emplace<Rep<uint32_t>>(keys);
        else
            m_rep.emplace<Rep<uint64_t>>(keys);
    }

    size_t size() const {
        return std::visit([](const auto& r) { return r.leaves.size(); }, m_rep);
    }
    bool empty() const { return size() == 0; }
    uint32_t key_width() const { return m_width; }

    // largest stored key <= x, with its 1-based index
    std::optional<Pred> pred(uint64_t x, ProbeCounter* pc = nullptr) const {
        return std::visit([&](const auto& r) { return r.pred(x, pc); }, m_rep);
    }

    // |{ y in keys : y <= x }|
    uint64_t rank(uint64_t x, ProbeCounter* pc = nullptr) const {
        auto p = pred(x, pc);
        return p ? p->rank : 0;
    }

    // i-th smallest key, i in 1..size
    uint64_t select(uint64_t i, ProbeCounter* pc = nullptr) const {
        if (i < 1 || i > size()) raise(Errc::contract, "PredSet::select: out of range");
        return std::visit([&](const auto& r) { return r.select(i, pc); }, m_rep);
    }

    // node visits needed by any single query
    uint32_t height() const {
        return std::visit(
            [](const auto& r) {
                return r.leaves.empty()
                           ? uint32_t{0}
                           : static_cast<uint32_t>(r.routers.size()) + 1;
            },
            m_rep);
    }

    uint64_t key_bits() const { return size() * m_width; }

    // routers at key_width bits each, prefix sums at ceil(lg(m+1)) bits each
    uint64_t overhead_bits() const {
        uint64_t router_entries = 0, psum_entries = 0;
        std::visit(
            [&](const auto& r) {
                for (const auto& lvl : r.routers) router_entries += lvl.size();
                for (const auto& lvl : r.psums) psum_entries += lvl.size();
            },
            m_rep);
        return router_entries * m_width + psum_entries * ceil_log2(size() + 1);
    }

    // structural audit: routers are child maxima, prefix sums add up
    bool debug_validate() const {
        return std::visit([](const auto& r) { return r.debug_validate(); }, m_rep);
    }

private:
    template <typename Lane>
    struct Rep {
        std::vector<Lane> leaves;
        std::vector<std::vector<Lane>> routers;    // bottom-up levels of child maxima
        std::vector<std::vector<uint64_t>> psums;  // stride branching+1 per node

        Rep() = default;

        explicit Rep(std::span<const uint64_t> keys) {
            leaves.reserve(keys.size());
            for (uint64_t k : keys) leaves.push_back(static_cast<Lane>(k));
            if (leaves.empty()) return;

            // bottom-up: collapse node maxima/sizes until a single root
            std::vector<Lane> maxes;
            std::vector<uint64_t> sizes;
            size_t groups = (leaves.size() + branching - 1) / branching;
            for (size_t g = 0; g < groups; ++g) {
                size_t begin = g * branching;
                size_t end = std::min(begin + branching, leaves.size());
                maxes.push_back(leaves[end - 1]);
                sizes.push_back(end - begin);
            }
            while (maxes.size() > 1) {
                std::vector<Lane> up_max;
                std::vector<uint64_t> up_size;
                std::vector<Lane> level_routers;
                std::vector<uint64_t> level_psums;
                size_t parents = (maxes.size() + branching - 1) / branching;
                for (size_t p = 0; p < parents; ++p) {
                    size_t begin = p * branching;
                    size_t end = std::min(begin + branching, maxes.size());
                    uint64_t acc = 0;
                    level_psums.push_back(0);
                    for (size_t c = begin; c < end; ++c) {
                        level_routers.push_back(maxes[c]);
                        acc += sizes[c];
                        level_psums.push_back(acc);
                    }
                    // pad to fixed stride so node slices are addressable
                    for (size_t c = end; c < begin + branching; ++c) level_psums.push_back(acc);
                    up_max.push_back(maxes[end - 1]);
                    up_size.push_back(acc);
                }
                routers.push_back(std::move(level_routers));
                psums.push_back(std::move(level_psums));
                maxes.swap(up_max);
                sizes.swap(up_size);
            }
        }

        size_t node_children(size_t level_entries, size_t node) const {
            size_t begin = node * branching;
            return std::min<size_t>(branching, level_entries - begin);
        }

        std::optional<Pred> pred(uint64_t x, ProbeCounter* pc) const {
            if (leaves.empty()) return std::nullopt;
            Lane q;
            if (x >= static_cast<uint64_t>(static_cast<Lane>(~Lane{0})))
                q = static_cast<Lane>(~Lane{0});
            else
                q = static_cast<Lane>(x);
            uint64_t rank_acc = 0;
            std::optional<uint64_t> cand;
            size_t node = 0;
            for (size_t lvl = routers.size(); lvl-- > 0;) {
                count_probe(pc);
                size_t begin = node * branching;
                size_t cnt = node_children(routers[lvl].size(), node);
                size_t idx = kernels::count_leq(routers[lvl].data() + begin, cnt, q);
                rank_acc += psums[lvl][node * (branching + 1) + idx];
                if (idx > 0) cand = routers[lvl][begin + idx - 1];
                if (idx == cnt) {  // whole subtree <= x
                    return cand ? std::optional<Pred>(Pred{*cand, rank_acc}) : std::nullopt;
                }
                node = node * branching + idx;
            }
            count_probe(pc);
            size_t begin = node * branching;
            size_t cnt = node_children(leaves.size(), node);
            size_t c = kernels::count_leq(leaves.data() + begin, cnt, q);
            rank_acc += c;
            if (c > 0) cand = leaves[begin + c - 1];
            if (!cand) return std::nullopt;
            return Pred{*cand, rank_acc};
        }

        uint64_t select(uint64_t i, ProbeCounter* pc) const {
            size_t node = 0;
            for (size_t lvl = routers.size(); lvl-- > 0;) {
                count_probe(pc);
                const uint64_t* ps = psums[lvl].data() + node * (branching + 1);
                size_t cnt = node_children(routers[lvl].size(), node);
                // child j with ps[j] < i <= ps[j+1]
                size_t j = kernels::count_leq(ps + 1, cnt, i - 1);
                i -= ps[j];
                node = node * branching + j;
            }
            count_probe(pc);
            return leaves[node * branching + (i - 1)];
        }

        bool debug_validate() const {
            for (size_t i = 0; i + 1 < leaves.size(); ++i)
                if (leaves[i] >= leaves[i + 1]) return false;
            // recompute maxima and sizes bottom-up and compare
            std::vector<Lane> maxes;
            std::vector<uint64_t> sizes;
            size_t groups = (leaves.size() + branching - 1) / branching;
            for (size_t g = 0; g < groups; ++g) {
                size_t end = std::min((g + 1) * branching, leaves.size());
                maxes.push_back(leaves[end - 1]);
                sizes.push_back(end - g * branching);
            }
            for (size_t lvl = 0; lvl < routers.size(); ++lvl) {
                size_t parents = (maxes.size() + branching - 1) / branching;
                std::vector<Lane> up_max;
                std::vector<uint64_t> up_size;
                for (size_t p = 0; p < parents; ++p) {
                    size_t begin = p * branching;
                    size_t end = std::min(begin + branching, maxes.size());
                    uint64_t acc = 0;
                    if (psums[lvl][p * (branching + 1)] != 0) return false;
                    for (size_t c = begin; c < end; ++c) {
                        if (routers[lvl][c] != maxes[c]) return false;
                        acc += sizes[c];
                        if (psums[lvl][p * (branching + 1) + (c - begin) + 1] != acc)
                            return false;
                    }
                    up_max.push_back(maxes[end - 1]);
                    up_size.push_back(acc);
                }
                maxes.swap(up_max);
                sizes.swap(up_size);
            }
            return maxes.size() <= 1;
        }
    };

    std::variant<Rep<uint8_t>, Rep<uint16_t>, Rep<uint32_t>, Rep<uint64_t>> m_rep;
    uint32_t m_width = 0;
};

}  // namespace chc
