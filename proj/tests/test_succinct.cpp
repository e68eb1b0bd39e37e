#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "chc/bitvector.hpp"
#include "chc/wavelet_tree.hpp"
#include "test_util.hpp"

using namespace chc;

namespace {

RsBitVector make_bv(const std::vector<uint8_t>& bits) {
    RsBitVector::Builder b;
    for (uint8_t bit : bits) b.push(bit);
    return b.build();
}

}  // namespace

TEST_CASE("rank and select on 1011") {
    auto bv = make_bv({1, 0, 1, 1});
    CHECK(bv.rank1(0) == 0);
    CHECK(bv.rank1(3) == 2);
    CHECK(bv.rank1(4) == 3);
    CHECK(bv.select1(0) == 0);
    CHECK(bv.select1(2) == 3);
    CHECK(bv.select1(3) == 4);
    CHECK_THROWS_AS(bv.rank1(5), Error);
    CHECK_THROWS_AS(bv.select1(4), Error);
}

TEST_CASE("all-zeros and all-ones vectors") {
    auto zeros = make_bv(std::vector<uint8_t>(300, 0));
    CHECK(zeros.rank1(300) == 0);
    CHECK(zeros.select0(127) == 127);
    auto ones = make_bv(std::vector<uint8_t>(300, 1));
    for (uint64_t k : {uint64_t{1}, uint64_t{64}, uint64_t{65}, uint64_t{300}})
        CHECK(ones.select1(k) == k);
}

TEST_CASE("rank/select match the naive oracle on random vectors") {
    chc_test::Rng rng(0x5E1EC7);
    for (size_t len : {size_t{0}, size_t{1}, size_t{63}, size_t{64}, size_t{65}, size_t{511},
                       size_t{512}, size_t{513}, size_t{1500}, size_t{5000}}) {
        for (int density = 0; density < 3; ++density) {
            chc_test::NaiveBits naive;
            RsBitVector::Builder b;
            for (size_t i = 0; i < len; ++i) {
                uint8_t bit = density == 0   ? (rng.next_below(16) == 0)
                              : density == 1 ? (rng.next() & 1)
                                             : (rng.next_below(16) != 0);
                naive.bits.push_back(bit);
                b.push(bit);
            }
            auto bv = b.build();
            REQUIRE(bv.size() == len);
            for (uint64_t i = 0; i <= len; ++i) {
                CHECK(bv.rank1(i) == naive.rank1(i));
            }
            for (uint64_t j = 0; j <= bv.ones(); ++j) CHECK(bv.select1(j) == naive.select1(j));
            for (uint64_t j = 0; j <= bv.zeros(); ++j) CHECK(bv.select0(j) == naive.select0(j));
            // inverse identity
            for (uint64_t j = 1; j <= bv.ones(); ++j) CHECK(bv.rank1(bv.select1(j)) == j);
        }
    }
}

TEST_CASE("directory overhead stays within 25% of payload") {
    chc_test::Rng rng(0xD13);
    RsBitVector::Builder b;
    for (size_t i = 0; i < 4096; ++i) b.push(rng.next() & 1);
    auto bv = b.build();
    CHECK(bv.directory_bits() * 4 <= bv.payload_bits() * 1 + 3 * 64);  // 12.5% + slack counters
    CHECK(bv.directory_bits() <= bv.payload_bits() / 4);
}

TEST_CASE("wavelet tree fixed examples over L = [1,2,3,3]") {
    std::vector<uint8_t> L{1, 2, 3, 3};
    WaveletTree wt(L, 3);
    CHECK(wt.access(1) == 1);
    CHECK(wt.access(3) == 3);
    CHECK(wt.rank(3, 4) == 2);
    CHECK(wt.rank(3, 3) == 1);
    for (uint32_t v = 1; v <= 3; ++v) CHECK(wt.rank(v, 0) == 0);
    CHECK(wt.select(3, 1) == 3);
    CHECK(wt.select(2, 1) == 2);
    CHECK_THROWS_AS(wt.select(2, 2), Error);
    CHECK_THROWS_AS(wt.access(5), Error);
}

TEST_CASE("single-value alphabet wavelet tree") {
    std::vector<uint8_t> L{1, 1, 1};
    WaveletTree wt(L, 1);
    CHECK(wt.levels() == 0);
    CHECK(wt.access(2) == 1);
    CHECK(wt.rank(1, 3) == 3);
    CHECK(wt.select(1, 2) == 2);
}

TEST_CASE("wavelet tree agrees with naive scans on random sequences") {
    chc_test::Rng rng(0x3A37);
    int rounds = 10000;
    for (int round = 0; round < rounds; ++round) {
        uint32_t alphabet = 1 + static_cast<uint32_t>(rng.next_below(32));
        size_t len = rng.next_below(round % 8 == 0 ? 512 : 96);
        std::vector<uint8_t> seq(len);
        for (auto& v : seq) v = static_cast<uint8_t>(1 + rng.next_below(alphabet));
        WaveletTree wt(seq, alphabet);

        for (size_t i = 1; i <= len; ++i) CHECK(wt.access(i) == seq[i - 1]);
        for (uint32_t v = 1; v <= alphabet; ++v) {
            uint64_t cnt = 0;
            for (size_t i = 0; i < len; ++i) {
                cnt += seq[i] == v;
                CHECK(wt.rank(v, i + 1) == cnt);
            }
            CHECK(wt.count(v) == cnt);
            uint64_t seen = 0;
            for (size_t i = 0; i < len; ++i) {
                if (seq[i] == v) CHECK(wt.select(v, ++seen) == i + 1);
            }
            // rank of select is the identity
            for (uint64_t r = 1; r <= cnt; ++r) CHECK(wt.rank(v, wt.select(v, r)) == r);
        }
    }
}

TEST_CASE("per-operation probes stay within ceil(lg alphabet)") {
    chc_test::Rng rng(0x9B0B);
    for (int round = 0; round < 50; ++round) {
        uint32_t alphabet = 2 + static_cast<uint32_t>(rng.next_below(62));
        size_t len = 64 + rng.next_below(512);
        std::vector<uint8_t> seq(len);
        for (auto& v : seq) v = static_cast<uint8_t>(1 + rng.next_below(alphabet));
        WaveletTree wt(seq, alphabet);
        uint32_t levels = wt.levels();
        CHECK(levels == ceil_log2(alphabet));

        uint64_t pos = 1 + rng.next_below(len);
        ProbeCounter pc;
        wt.access(pos, &pc);
        CHECK(pc.probes <= levels);

        pc.probes = 0;
        uint32_t v = seq[pos - 1];
        wt.rank(v, pos, &pc);
        CHECK(pc.probes <= levels);

        pc.probes = 0;
        wt.select(v, wt.rank(v, pos), &pc);
        CHECK(pc.probes <= levels);
    }
}

TEST_CASE("wavelet payload is exactly levels * sigma bits") {
    std::vector<uint8_t> seq(1000);
    chc_test::Rng rng(0xFA11);
    for (auto& v : seq) v = static_cast<uint8_t>(1 + rng.next_below(20));
    WaveletTree wt(seq, 20);
    CHECK(wt.payload_bits() == uint64_t{wt.levels()} * 1000);
    CHECK(wt.directory_bits() * 4 <= wt.payload_bits() + 8 * 64 * wt.levels());
}
