#include "doctest.h"

#include <algorithm>
#include <vector>

#include "intseq/pef.hpp"
#include "test_util.hpp"

using namespace intseq;

namespace {

// quadratic exact shortest path over the same cost model
uint64_t exact_dp_cost(std::span<const uint32_t> s, uint64_t universe) {
    const size_t n = s.size();
    const uint64_t overhead = pef_per_chunk_overhead(n, universe);
    std::vector<uint64_t> dist(n + 1, std::numeric_limits<uint64_t>::max());
    dist[0] = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j <= n; ++j) {
            const uint64_t prev = i == 0 ? uint64_t(-1) : uint64_t(s[i - 1]);
            const uint64_t m = uint64_t(s[j - 1]) - prev;
            const uint64_t w = pef_chunk_cost(j - i, m).bits + overhead;
            dist[j] = std::min(dist[j], dist[i] + w);
        }
    return dist[n];
}

}  // namespace

TEST_CASE("chunk cost rule") {
    // sparse chunk: Elias-Fano at 5 bits per element beats the 8 of a bitmap
    const pef_cost sparse = pef_chunk_cost(5, 40);
    CHECK(sparse.kind == pef_chunk_kind::ef);
    CHECK(sparse.bits == 25);

    // dense chunk: the characteristic bitvector wins at 1.33 bits per element
    const pef_cost dense = pef_chunk_cost(30, 40);
    CHECK(dense.kind == pef_chunk_kind::bitmap);
    CHECK(dense.bits == 40);

    // a chunk covering its whole universe costs nothing
    const pef_cost full = pef_chunk_cost(40, 40);
    CHECK(full.kind == pef_chunk_kind::full);
    CHECK(full.bits == 0);

    CHECK_THROWS_AS(pef_chunk_cost(0, 10), contract_violation);
    CHECK_THROWS_AS(pef_chunk_cost(11, 10), contract_violation);
}

TEST_CASE("a leading run becomes a full chunk") {
    std::vector<uint32_t> s;
    for (uint32_t i = 0; i < 300; ++i) s.push_back(i);
    for (uint32_t v : {5000u, 9000u, 12000u, 40000u, 41000u}) s.push_back(v);
    const partitioned_ef p(s, 1 << 17);
    REQUIRE(p.num_chunks() >= 2);
    CHECK(p.chunk_kind(0) == pef_chunk_kind::full);
    CHECK(p.decode() == s);
}

TEST_CASE("single-chunk degenerate equals plain elias-fano") {
    testutil::rng rng(5);
    const auto s = testutil::random_sorted_list(rng, 500, 1 << 16);
    const partitioned_ef p(s, 1 << 16, std::vector<uint32_t>{uint32_t(s.size())});
    const elias_fano ef(s, 1 << 16);
    CHECK(p.num_chunks() == 1);
    CHECK(p.decode() == ef.decode());
    CHECK(p.chunk_payload_bits() <= ef.payload_bits());
    for (int q = 0; q < 2000; ++q) {
        const uint64_t x = rng.below(1 << 16);
        CHECK(p.nextgeq(x) == ef.nextgeq(x));
    }
}

TEST_CASE("partition cost stays within (1+eps) of the exact optimum") {
    testutil::rng rng(618);
    const double eps = 0.03;
    for (int iter = 0; iter < 120; ++iter) {
        const size_t n = rng.between(1, 2048);
        const uint32_t universe = static_cast<uint32_t>(rng.between(n, 1 << 22));
        const auto s = rng.below(2) == 0
                           ? testutil::random_sorted_list(rng, n, universe)
                           : testutil::clustered_sorted_list(rng, n, universe);
        const uint64_t u = uint64_t(s.back()) + 1 + rng.below(1000);
        const partitioned_ef p(s, u, eps);
        const uint64_t exact = exact_dp_cost(s, u);
        CHECK(double(p.partition_cost_bits()) <= double(exact) * (1.0 + eps) + 1e-6);
        CHECK(p.decode() == s);
    }
}

TEST_CASE("partitioning never loses to plain elias-fano") {
    testutil::rng rng(271);
    for (int iter = 0; iter < 200; ++iter) {
        const size_t n = rng.between(1, 4000);
        const uint32_t universe = static_cast<uint32_t>(rng.between(n, 1 << 24));
        const auto s = rng.below(2) == 0
                           ? testutil::random_sorted_list(rng, n, universe)
                           : testutil::clustered_sorted_list(rng, n, universe);
        const uint64_t u = uint64_t(s.back()) + 1;
        const partitioned_ef p(s, u);
        const elias_fano ef(s, u);
        CHECK(p.chunk_payload_bits() <= ef.payload_bits() + p.first_level_bits());
    }
}

TEST_CASE("every chunk kind satisfies the cost-minimum rule") {
    testutil::rng rng(33);
    for (int iter = 0; iter < 50; ++iter) {
        const auto s = testutil::clustered_sorted_list(rng, rng.between(100, 3000), 1 << 20);
        const partitioned_ef p(s, 1 << 20);
        REQUIRE(p.decode() == s);
        uint64_t total = 0;
        for (size_t c = 0; c < p.num_chunks(); ++c) {
            const auto [lo, last] = p.chunk_span(c);
            const uint64_t b = p.chunk_size(c);
            total += b;
            const pef_cost best = pef_chunk_cost(b, last - lo + 1);
            CHECK(p.chunk_kind(c) == best.kind);
            CHECK((p.chunk_kind(c) == pef_chunk_kind::full) == (b == last - lo + 1));
        }
        CHECK(total == s.size());
    }
}

TEST_CASE("access and nextgeq match plain elias-fano on any sequence") {
    testutil::rng rng(902);
    for (int iter = 0; iter < 60; ++iter) {
        const uint32_t universe = static_cast<uint32_t>(rng.between(50, 1 << 22));
        const auto s = rng.below(2) == 0
                           ? testutil::random_sorted_list(rng, rng.between(1, 3000), universe)
                           : testutil::clustered_sorted_list(rng, rng.between(1, 3000), universe);
        const uint64_t u = uint64_t(s.back()) + 1 + rng.below(100);
        const partitioned_ef p(s, u);
        const elias_fano ef(s, u);
        for (int q = 0; q < 1000; ++q) {
            const uint64_t x = rng.below(u + 2);
            CHECK(p.nextgeq(x) == ef.nextgeq(x));
        }
        for (size_t i = 1; i <= s.size(); ++i) CHECK(p.access(i) == s[i - 1]);
        // access just past a chunk boundary lands on the next chunk's first element
        uint64_t cum = 0;
        for (size_t c = 0; c + 1 < p.num_chunks(); ++c) {
            cum += p.chunk_size(c);
            CHECK(p.access(cum + 1) == s[cum]);
        }
        pef_cursor cur(p);
        for (uint32_t v : s) {
            REQUIRE(cur.valid());
            CHECK(cur.value() == v);
            cur.next();
        }
    }
}

TEST_CASE("nextgeq into a full chunk returns the query itself") {
    std::vector<uint32_t> s;
    for (uint32_t v : {3u, 9u, 20u}) s.push_back(v);
    for (uint32_t i = 100; i <= 400; ++i) s.push_back(i);  // a fat run
    s.push_back(100000);
    const partitioned_ef p(s, 1 << 18);
    for (uint32_t x = 150; x < 380; x += 17) CHECK(p.nextgeq(x) == x);
    CHECK(p.nextgeq(401) == 100000);
}

TEST_CASE("cursor nextgeq is forward-correct across chunk kinds") {
    testutil::rng rng(5150);
    const auto s = testutil::clustered_sorted_list(rng, 6000, 1 << 20);
    const partitioned_ef p(s, 1 << 20);
    std::vector<uint32_t> queries;
    for (int q = 0; q < 1500; ++q) queries.push_back(static_cast<uint32_t>(rng.below(1 << 20)));
    std::sort(queries.begin(), queries.end());
    pef_cursor cur(p);
    for (uint32_t x : queries) {
        const auto it = std::lower_bound(s.begin(), s.end(), x);
        const uint64_t expect = it == s.end() ? exhausted : *it;
        CHECK(cur.nextgeq(x) == expect);
        if (expect == exhausted) break;
    }
}

TEST_CASE("serialization roundtrip") {
    testutil::rng rng(8080);
    const auto s = testutil::clustered_sorted_list(rng, 2500, 1 << 19);
    const partitioned_ef p(s, 1 << 19);
    std::vector<uint8_t> bytes;
    p.serialize(bytes);
    size_t pos = 0;
    const partitioned_ef back = partitioned_ef::deserialize(bytes.data(), bytes.size(), pos);
    CHECK(pos == bytes.size());
    CHECK(back.decode() == s);
    CHECK(back.num_chunks() == p.num_chunks());
    for (int q = 0; q < 500; ++q) {
        const uint64_t x = rng.below(1 << 19);
        CHECK(back.nextgeq(x) == p.nextgeq(x));
    }
}

TEST_CASE("bad inputs are rejected") {
    CHECK_THROWS_AS(partitioned_ef(std::vector<uint32_t>{}, 10), contract_violation);
    CHECK_THROWS_AS(partitioned_ef(std::vector<uint32_t>{10}, 10), contract_violation);
    CHECK_THROWS_AS(partitioned_ef(std::vector<uint32_t>{1, 1}, 10), contract_violation);
    CHECK_THROWS_AS(partitioned_ef(std::vector<uint32_t>{1, 2}, 10, 0.0), contract_violation);
    CHECK_THROWS_AS(partitioned_ef(std::vector<uint32_t>{1, 2}, 10, 1.0), contract_violation);
}
