#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "chc/pred_set.hpp"
#include "test_util.hpp"

using namespace chc;

namespace {

std::vector<uint64_t> random_key_set(chc_test::Rng& rng, size_t n, uint32_t width) {
    std::set<uint64_t> keys;
    uint64_t mask = low_mask(width);
    while (keys.size() < n) keys.insert(rng.next() & mask);
    return {keys.begin(), keys.end()};
}

}  // namespace

TEST_CASE("running example keys {000, 100, 110}") {
    std::vector<uint64_t> keys{0b000, 0b100, 0b110};
    PredSet ps(keys, 3);
    REQUIRE(ps.size() == 3);

    auto p = ps.pred(0b101);
    REQUIRE(p);
    CHECK(p->key == 0b100);
    CHECK(p->rank == 2);

    p = ps.pred(0b111);
    REQUIRE(p);
    CHECK(p->key == 0b110);
    CHECK(p->rank == 3);

    // 0 is a stored key, so pred never comes back empty
    for (uint64_t x = 0; x < 8; ++x) CHECK(ps.pred(x).has_value());

    CHECK(ps.rank(0b101) == 2);
    CHECK(ps.select(2) == 0b100);
    CHECK(ps.rank(0b011) == 1);
    CHECK(ps.select(ps.size()) == 0b110);
    CHECK(ps.debug_validate());
}

TEST_CASE("empty set and contract errors") {
    PredSet empty(std::vector<uint64_t>{}, 8);
    CHECK(empty.empty());
    CHECK_FALSE(empty.pred(255).has_value());
    CHECK(empty.rank(255) == 0);
    CHECK_THROWS_AS(empty.select(1), Error);

    std::vector<uint64_t> dup{3, 3};
    CHECK_THROWS_AS(PredSet(dup, 8), Error);
    std::vector<uint64_t> unsorted{4, 2};
    CHECK_THROWS_AS(PredSet(unsorted, 8), Error);
    std::vector<uint64_t> wide{1, 9};
    CHECK_THROWS_AS(PredSet(wide, 3), Error);
}

TEST_CASE("rank below the minimum key is zero") {
    std::vector<uint64_t> keys{100, 200};
    PredSet ps(keys, 16);
    CHECK(ps.rank(99) == 0);
    CHECK_FALSE(ps.pred(99).has_value());
}

TEST_CASE("agreement with the binary-search oracle across widths") {
    chc_test::Rng rng(0xF00D);
    const uint32_t widths[] = {3, 8, 16, 24, 48};
    uint64_t trials = 0;
    for (uint32_t width : widths) {
        for (int round = 0; round < 40; ++round) {
            uint64_t universe = low_mask(width);
            size_t max_n = universe < 4000 ? static_cast<size_t>(universe) : 4000;
            size_t n = 1 + rng.next_below(max_n);
            auto keys = random_key_set(rng, n, width);
            PredSet ps(keys, width);
            REQUIRE(ps.debug_validate());

            for (int q = 0; q < 500; ++q) {
                uint64_t x = rng.next() & universe;
                if (q % 5 == 0) x = keys[rng.next_below(keys.size())];  // exact hits
                if (q % 7 == 0 && keys[0] > 0) x = keys[0] - 1;
                auto expect = chc_test::pred_oracle(keys, x);
                auto got = ps.pred(x);
                ++trials;
                REQUIRE(got.has_value() == expect.has_value());
                if (got) {
                    CHECK(got->key == expect->first);
                    CHECK(got->rank == expect->second);
                }
                CHECK(ps.rank(x) == (expect ? expect->second : 0));
            }
            for (uint64_t i = 1; i <= ps.size(); ++i) {
                CHECK(ps.select(i) == keys[i - 1]);
                CHECK(ps.rank(ps.select(i)) == i);  // select then rank identity
            }
        }
    }
    CHECK(trials >= 100000);
}

TEST_CASE("probe count stays within ceil(log16 n) + 1 nodes") {
    chc_test::Rng rng(0xBEEF);
    for (size_t n : {size_t{1}, size_t{15}, size_t{16}, size_t{17}, size_t{255}, size_t{256},
                     size_t{257}, size_t{5000}}) {
        auto keys = random_key_set(rng, n, 48);
        PredSet ps(keys, 48);
        uint32_t bound = ceil_log2(std::max<uint64_t>(n, 2));  // ceil(log2)
        // convert to log16: ceil(log16 n) = ceil(log2 n / 4)
        uint32_t log16 = (bound + 3) / 4;
        CHECK(ps.height() <= log16 + 1);
        for (int q = 0; q < 50; ++q) {
            ProbeCounter pc;
            ps.pred(rng.next() & low_mask(48), &pc);
            CHECK(pc.probes <= log16 + 1);
            pc.probes = 0;
            ps.select(1 + rng.next_below(n), &pc);
            CHECK(pc.probes <= log16 + 1);
        }
    }
}

TEST_CASE("prefix sums audited structurally") {
    chc_test::Rng rng(0xACE);
    for (size_t n : {size_t{5}, size_t{40}, size_t{700}, size_t{12345}}) {
        auto keys = random_key_set(rng, n, 32);
        PredSet ps(keys, 32);
        CHECK(ps.debug_validate());
    }
}
