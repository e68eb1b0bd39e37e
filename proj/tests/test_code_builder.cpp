#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "chc/code_builder.hpp"
#include "test_util.hpp"

using namespace chc;

namespace {

FrequencyTable table(std::vector<std::pair<uint32_t, uint64_t>> entries) {
    FrequencyTable ft;
    for (auto [s, c] : entries) {
        ft.symbols.push_back(s);
        ft.counts.push_back(c);
        ft.total += c;
    }
    return ft;
}

}  // namespace

TEST_CASE("lengths for {a:5, b:2, c:1, d:1}") {
    auto cl = compute_lengths(table({{1, 5}, {2, 2}, {3, 1}, {4, 1}}));
    CHECK(cl.lengths == std::vector<uint8_t>{1, 2, 3, 3});
    CHECK(cl.max_len == 3);
}

TEST_CASE("uniform four-symbol table is balanced") {
    auto cl = compute_lengths(table({{1, 1}, {2, 1}, {3, 1}, {4, 1}}));
    CHECK(cl.lengths == std::vector<uint8_t>{2, 2, 2, 2});
}

TEST_CASE("single-symbol table degenerates to one bit") {
    auto cl = compute_lengths(table({{7, 7}}));
    CHECK(cl.lengths == std::vector<uint8_t>{1});
    auto code = canonicalize(cl);
    CHECK(code.sigma == 1);
    CHECK(code.max_len == 1);
    CHECK(code.first_of(1) == 0);
}

TEST_CASE("empty frequency table is rejected") {
    CHECK_THROWS_AS(compute_lengths(FrequencyTable{}), Error);
}

TEST_CASE("canonical assignment of L = [1,2,3,3]") {
    CodeLengths cl;
    cl.symbols = {1, 2, 3, 4};
    cl.lengths = {1, 2, 3, 3};
    cl.max_len = 3;
    auto code = canonicalize(cl);
    auto cws = code.codewords();
    REQUIRE(cws.size() == 4);
    CHECK(cws[0].value == 0b0);
    CHECK(cws[1].value == 0b10);
    CHECK(cws[2].value == 0b110);
    CHECK(cws[3].value == 0b111);
    CHECK(code.first_of(1) == 0b0);
    CHECK(code.first_of(2) == 0b10);
    CHECK(code.first_of(3) == 0b110);
}

TEST_CASE("uniform lengths assign consecutive codewords") {
    CodeLengths cl;
    cl.symbols = {1, 2, 3, 4};
    cl.lengths = {2, 2, 2, 2};
    cl.max_len = 2;
    auto cws = canonicalize(cl).codewords();
    for (uint64_t i = 0; i < 4; ++i) CHECK(cws[i].value == i);
}

TEST_CASE("equal lengths order by symbol id: L = [3,3,2,1]") {
    CodeLengths cl;
    cl.symbols = {1, 2, 3, 4};
    cl.lengths = {3, 3, 2, 1};
    cl.max_len = 3;
    auto code = canonicalize(cl);
    auto cws = code.codewords();
    CHECK(cws[0].symbol == 4);
    CHECK(cws[0].value == 0b0);
    CHECK(cws[1].symbol == 3);
    CHECK(cws[1].value == 0b10);
    CHECK(cws[2].symbol == 1);
    CHECK(cws[2].value == 0b110);
    CHECK(cws[3].symbol == 2);
    CHECK(cws[3].value == 0b111);
}

TEST_CASE("non-Kraft lengths are rejected") {
    CodeLengths cl;
    cl.symbols = {1, 2};
    cl.lengths = {2, 2};  // sums to 1/2
    cl.max_len = 2;
    CHECK_THROWS_AS(canonicalize(cl), Error);
    cl.lengths = {1, 1, 1};  // sums to 3/2
    cl.symbols = {1, 2, 3};
    CHECK_THROWS_AS(canonicalize(cl), Error);
}

TEST_CASE("tail_split basics") {
    auto t1 = tail_split(0b110, 3);
    CHECK(t1.ones_run == 2);
    CHECK(t1.tail_len == 1);
    CHECK(t1.tail == 0b0);

    auto t2 = tail_split(0b111, 3);  // all ones: empty tail
    CHECK(t2.ones_run == 3);
    CHECK(t2.tail_len == 0);

    auto t3 = tail_split(0b0, 1);
    CHECK(t3.ones_run == 0);
    CHECK(t3.tail_len == 1);
    CHECK(t3.tail == 0b0);
}

TEST_CASE("validate accepts the running code") {
    auto code = canonicalize(compute_lengths(table({{1, 5}, {2, 2}, {3, 1}, {4, 1}})));
    auto rep = validate(code, 9);
    CHECK(rep.ok());
    CHECK(rep.lmax == 3);
    CHECK(rep.lmax_cap == std::min<uint32_t>(3, 4));  // floor(log_phi 9) = 4
    // census: First codewords 0, 10, 110 all have tail length 1
    REQUIRE(rep.census.size() == 1);
    CHECK(rep.census[0] == 3);
}

TEST_CASE("validate flags a non-canonical assignment") {
    // a=1, b=00, c=010, d=011 in (length, symbol) order
    std::vector<uint64_t> values{0b1, 0b00, 0b010, 0b011};
    std::vector<uint8_t> lens{1, 2, 3, 3};
    auto rep = validate_assignment(values, lens, 4, 9);
    CHECK_FALSE(rep.strict_increase_ok);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("floor_log_phi matches hand values") {
    CHECK(floor_log_phi(1) == 0);
    CHECK(floor_log_phi(2) == 1);
    CHECK(floor_log_phi(9) == 4);    // phi^4 = 6.85, phi^5 = 11.09
    CHECK(floor_log_phi(11) == 4);
    CHECK(floor_log_phi(12) == 5);
}

TEST_CASE("optimality against exhaustive enumeration") {
    chc_test::Rng rng(0x0977);
    for (int round = 0; round < 300; ++round) {
        uint32_t sigma = 2 + static_cast<uint32_t>(rng.next_below(7));
        auto ft = chc_test::random_freq_table(rng, sigma, 8);
        auto cl = compute_lengths(ft);
        uint64_t huffman_cost = 0;
        for (size_t i = 0; i < cl.lengths.size(); ++i)
            huffman_cost += ft.counts[i] * cl.lengths[i];
        CHECK(huffman_cost == chc_test::optimal_code_cost(ft.counts));
    }
}

TEST_CASE("structural invariants over random codes") {
    chc_test::Rng rng(0x57A7);
    for (int round = 0; round < 400; ++round) {
        bool skewed = round % 2 == 0;
        auto code = chc_test::random_code(rng, 2, 80, skewed);
        uint64_t n = 0;
        auto rep = validate(code, 0);
        CHECK(rep.ok());
        (void)n;

        // Kraft in exact integers
        uint64_t kraft = 0;
        for (auto cw : code.codewords()) kraft += uint64_t{1} << (code.max_len - cw.length);
        CHECK(kraft == uint64_t{1} << code.max_len);

        // tails bounded by ceil(lg sigma), census cap 8 sigma
        uint32_t cap = ceil_log2(code.sigma);
        for (auto cw : code.codewords()) {
            auto ts = tail_split(cw.value, cw.length);
            CHECK((ts.tail_len == 0 || ts.tail_len <= cap));
        }
        CHECK(rep.census_max_ratio <= 8.0);
    }
}

TEST_CASE("lmax respects min(sigma-1, floor(log_phi n))") {
    chc_test::Rng rng(0x1314);
    for (int round = 0; round < 200; ++round) {
        uint32_t sigma = 2 + static_cast<uint32_t>(rng.next_below(40));
        auto ft = chc_test::random_skewed_freq_table(rng, sigma);
        auto code = canonicalize(compute_lengths(ft));
        CHECK(code.max_len <= std::min<uint32_t>(sigma - 1, floor_log_phi(ft.total)));
        // deepest codeword all ones, shallowest all zeros
        auto cws = code.codewords();
        CHECK(cws.back().value == low_mask(cws.back().length));
        CHECK(cws.front().value == 0);
    }
}
