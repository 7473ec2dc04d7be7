#include "doctest.h"

#include <numeric>
#include <vector>

#include "intseq/interpolative.hpp"
#include "test_util.hpp"

using namespace intseq;

namespace {

// plain-mode bit count computed by an independent recursion over the bounds
uint64_t plain_bits_oracle(std::span<const uint32_t> s, uint64_t l, uint64_t h) {
    if (s.empty()) return 0;
    const uint64_t n = s.size();
    if (l + n - 1 == h) return 0;
    const uint64_t m = (n + 1) / 2;
    const size_t g = m - 1;
    uint64_t bits = ceil_log2(h - l - n + 2);
    bits += plain_bits_oracle(s.subspan(0, g), l, uint64_t(s[g]) - 1);
    bits += plain_bits_oracle(s.subspan(g + 1), uint64_t(s[g]) + 1, h);
    return bits;
}

}  // namespace

TEST_CASE("recursion trace on the worked 11-element sequence") {
    const std::vector<uint32_t> s{3, 4, 7, 13, 14, 15, 21, 25, 36, 38, 54};
    bit_buffer out;
    bic_trace trace;
    bic_encode(s, 0, 62, bic_mode::plain, out, &trace);

    const std::vector<uint64_t> values{10, 5, 3, 0, 5, 18, 5, 3, 1, 15};
    const std::vector<uint32_t> lengths{6, 4, 3, 2, 3, 6, 5, 4, 5, 5};
    REQUIRE(trace.size() == values.size());
    for (size_t i = 0; i < trace.size(); ++i) {
        CHECK(trace[i].first == values[i]);
        CHECK(trace[i].second == lengths[i]);
    }
    CHECK(out.size_bits() == 43);
    CHECK(out.size_bits() == std::accumulate(lengths.begin(), lengths.end(), 0u));
    CHECK(out.size_bits() == plain_bits_oracle(s, 0, 62));

    bit_reader r(out);
    std::vector<uint32_t> back(s.size());
    bic_decode(r, s.size(), 0, 62, bic_mode::plain, back);
    CHECK(back == s);
}

TEST_CASE("runs cost zero bits") {
    // the whole sequence is a run under its bounds
    const std::vector<uint32_t> run{5, 6, 7, 8};
    bit_buffer out;
    bic_encode(run, 5, 8, bic_mode::plain, out);
    CHECK(out.size_bits() == 0);
    bit_reader r(out);
    std::vector<uint32_t> back(run.size());
    bic_decode(r, run.size(), 5, 8, bic_mode::plain, back);
    CHECK(back == run);

    // longer runs inside a sequence also vanish
    std::vector<uint32_t> s;
    for (uint32_t i = 100; i < 200; ++i) s.push_back(i);
    bit_buffer o2;
    bic_encode(s, 100, 199, bic_mode::leftmost_minimal, o2);
    CHECK(o2.size_bits() == 0);
}

TEST_CASE("encode is deterministic and bounds are validated") {
    const std::vector<uint32_t> s{3, 9, 12};
    bit_buffer a, b;
    bic_encode(s, 0, 20, bic_mode::centered_minimal, a);
    bic_encode(s, 0, 20, bic_mode::centered_minimal, b);
    CHECK(a == b);

    bit_buffer c;
    CHECK_THROWS_AS(bic_encode(s, 4, 20, bic_mode::plain, c), contract_violation);
    CHECK_THROWS_AS(bic_encode(s, 0, 11, bic_mode::plain, c), contract_violation);
    CHECK_THROWS_AS(bic_encode(std::vector<uint32_t>{3, 3}, 0, 11, bic_mode::plain, c),
                    contract_violation);
}

TEST_CASE("all modes roundtrip on random lists") {
    testutil::rng rng(271828);
    for (int iter = 0; iter < 800; ++iter) {
        const size_t n = rng.between(1, 2000);
        const auto s = rng.below(2) == 0 ? testutil::random_sorted_list(rng, n, 1 << 22)
                                         : testutil::clustered_sorted_list(rng, n, 1 << 22);
        const uint64_t l = s.front() - rng.below(uint64_t(s.front()) + 1);
        const uint64_t h = s.back() + rng.below(1000);
        for (bic_mode mode :
             {bic_mode::plain, bic_mode::leftmost_minimal, bic_mode::centered_minimal}) {
            bit_buffer out;
            bic_encode(s, l, h, mode, out);
            if (mode == bic_mode::plain) CHECK(out.size_bits() == plain_bits_oracle(s, l, h));
            bit_reader r(out);
            std::vector<uint32_t> back(s.size());
            bic_decode(r, s.size(), l, h, mode, back);
            CHECK(back == s);
            CHECK(r.position() == out.size_bits());
        }
    }
}

TEST_CASE("minimal-binary midpoints never lose to plain binary") {
    testutil::rng rng(5050);
    uint64_t wins = 0, total = 0;
    for (int iter = 0; iter < 2000; ++iter) {
        const size_t n = rng.between(2, 500);
        const auto s = testutil::clustered_sorted_list(rng, n, 1 << 18);
        bit_buffer plain, minimal;
        bic_encode(s, 0, s.back(), bic_mode::plain, plain);
        bic_encode(s, 0, s.back(), bic_mode::leftmost_minimal, minimal);
        CHECK(minimal.size_bits() <= plain.size_bits());
        total += plain.size_bits();
        wins += plain.size_bits() - minimal.size_bits();
    }
    CHECK(wins > 0);  // strictly shorter somewhere
    (void)total;
}

TEST_CASE("self-contained list records") {
    // a singleton is header-only
    bit_buffer single;
    bic_list_encode(std::vector<uint32_t>{77}, bic_mode::leftmost_minimal, single);
    {
        bit_reader r(single);
        CHECK(read_delta(r) == 1);
        CHECK(read_delta(r) + 1 - 2 == 77);
        CHECK(r.remaining() == 0);
        bit_reader r2(single);
        CHECK(bic_list_decode(r2, bic_mode::leftmost_minimal) == std::vector<uint32_t>{77});
    }

    // docID 0 alone and a dense prefix both survive the framing
    for (const std::vector<uint32_t>& s :
         {std::vector<uint32_t>{0}, std::vector<uint32_t>{0, 1, 2, 3},
          std::vector<uint32_t>{0, 1, 2, 3, 10}}) {
        bit_buffer out;
        bic_list_encode(s, bic_mode::centered_minimal, out);
        bit_reader r(out);
        CHECK(bic_list_decode(r, bic_mode::centered_minimal) == s);
    }

    testutil::rng rng(11235);
    for (int iter = 0; iter < 500; ++iter) {
        const auto s =
            testutil::random_sorted_list(rng, rng.between(1, 3000), 1 << 24);
        for (bic_mode mode :
             {bic_mode::plain, bic_mode::leftmost_minimal, bic_mode::centered_minimal}) {
            bit_buffer out;
            bic_list_encode(s, mode, out);
            bit_reader r(out);
            CHECK(bic_list_decode(r, mode) == s);
        }
    }
}
