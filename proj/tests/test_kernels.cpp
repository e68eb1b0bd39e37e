#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <vector>

#include "chc/kernels.hpp"
#include "test_util.hpp"

using namespace chc;

namespace {

template <typename T>
std::vector<T> random_lanes(chc_test::Rng& rng, size_t n) {
    std::vector<T> v(n);
    for (auto& x : v) x = static_cast<T>(rng.next());
    return v;
}

template <typename T>
void check_count_leq_all_impls(chc_test::Rng& rng) {
    for (size_t n : {size_t{0}, size_t{1}, size_t{3}, size_t{7}, size_t{8}, size_t{15},
                     size_t{16}, size_t{17}, size_t{31}, size_t{33}, size_t{64}, size_t{100}}) {
        auto keys = random_lanes<T>(rng, n);
        std::vector<T> queries{T(0), static_cast<T>(~T(0)), static_cast<T>(rng.next())};
        if (n > 0) {
            queries.push_back(keys[rng.next_below(n)]);  // exact hit
            queries.push_back(static_cast<T>(keys[rng.next_below(n)] + 1));
        }
        for (T q : queries) {
            size_t expect = 0;
            for (T k : keys) expect += k <= q;
            for (const auto& impl : kernels::implementations()) {
                size_t got = 0;
                if constexpr (sizeof(T) == 1) got = impl.count_leq_u8(keys.data(), n, q);
                if constexpr (sizeof(T) == 2) got = impl.count_leq_u16(keys.data(), n, q);
                if constexpr (sizeof(T) == 4) got = impl.count_leq_u32(keys.data(), n, q);
                if constexpr (sizeof(T) == 8) got = impl.count_leq_u64(keys.data(), n, q);
                CAPTURE(impl.name);
                CAPTURE(n);
                CHECK(got == expect);
            }
        }
    }
}

}  // namespace

TEST_CASE("at least scalar and swar tiers are registered") {
    auto impls = kernels::implementations();
    REQUIRE(impls.size() >= 2);
    CHECK(std::string(impls[0].name) == "scalar");
    CHECK(std::string(impls[1].name) == "swar");
}

TEST_CASE("count_leq agrees across implementations for every lane width") {
    chc_test::Rng rng(0xC0DE1);
    for (int round = 0; round < 50; ++round) {
        check_count_leq_all_impls<uint8_t>(rng);
        check_count_leq_all_impls<uint16_t>(rng);
        check_count_leq_all_impls<uint32_t>(rng);
        check_count_leq_all_impls<uint64_t>(rng);
    }
}

TEST_CASE("popcount_words agrees across implementations") {
    chc_test::Rng rng(0xC0DE2);
    for (size_t n : {size_t{0}, size_t{1}, size_t{3}, size_t{4}, size_t{5}, size_t{8},
                     size_t{100}}) {
        auto words = random_lanes<uint64_t>(rng, n);
        uint64_t expect = 0;
        for (uint64_t w : words) expect += std::popcount(w);
        for (const auto& impl : kernels::implementations()) {
            CAPTURE(impl.name);
            CHECK(impl.popcount_words(words.data(), n) == expect);
        }
    }
}

TEST_CASE("select_in_word agrees across implementations") {
    chc_test::Rng rng(0xC0DE3);
    std::vector<uint64_t> words{0x1ull, 0x8000000000000000ull, ~0ull, 0x5555555555555555ull};
    for (int i = 0; i < 200; ++i) words.push_back(rng.next());
    for (uint64_t w : words) {
        uint32_t ones = static_cast<uint32_t>(std::popcount(w));
        for (uint32_t r = 1; r <= ones; ++r) {
            // reference: walk bits
            uint32_t expect = 64, seen = 0;
            for (uint32_t b = 0; b < 64; ++b) {
                if ((w >> b) & 1 && ++seen == r) {
                    expect = b;
                    break;
                }
            }
            for (const auto& impl : kernels::implementations()) {
                CAPTURE(impl.name);
                CHECK(impl.select_in_word(w, r) == expect);
            }
        }
    }
}

TEST_CASE("dispatch override routes the convenience wrappers") {
    auto impls = kernels::implementations();
    const uint8_t keys[4] = {1, 5, 9, 200};
    for (const auto& impl : impls) {
        kernels::select(impl);
        CHECK(kernels::count_leq(keys, 4, uint8_t{9}) == 3);
    }
    kernels::select(impls.back());
}
