#include "doctest.h"

#include <algorithm>
#include <vector>

#include "intseq/universepart.hpp"
#include "test_util.hpp"

using namespace intseq;

namespace {

std::vector<uint32_t> oracle_intersect(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<uint32_t> oracle_union(const std::vector<uint32_t>& a,
                                   const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// mixes dense stretches, scattered values and runs across several chunks
std::vector<uint32_t> mixed_set(testutil::rng& rng, uint32_t universe, size_t target) {
    auto v = rng.below(2) == 0 ? testutil::random_sorted_list(rng, target, universe)
                               : testutil::clustered_sorted_list(rng, target, universe);
    return v;
}

}  // namespace

TEST_CASE("roaring container kinds follow the size rule") {
    // 4095 scattered values in one chunk: sorted array
    std::vector<uint32_t> scattered;
    for (uint32_t i = 0; i < 4095; ++i) scattered.push_back(2 * i);
    const roaring_set arr(scattered);
    REQUIRE(arr.num_chunks() == 1);
    CHECK(arr.chunk_kind(0) == roaring_set::container_kind::array);

    // 4096 scattered values: bitmap
    scattered.push_back(2 * 4095);
    const roaring_set bmp(scattered);
    REQUIRE(bmp.num_chunks() == 1);
    CHECK(bmp.chunk_kind(0) == roaring_set::container_kind::bitmap);

    // a full 2^16 span collapses to a single run pair
    std::vector<uint32_t> full(65536);
    for (uint32_t i = 0; i < 65536; ++i) full[i] = i;
    const roaring_set runs(full);
    REQUIRE(runs.num_chunks() == 1);
    CHECK(runs.chunk_kind(0) == roaring_set::container_kind::runs);
    CHECK(runs.serialized_bytes() == 4 + 7 + 4 + 4);  // headers + run count + one run pair
    CHECK(runs.decode() == full);

    // equal run/array sizes keep the array: 2 values = 1 run pair = 4 bytes
    const roaring_set tie(std::vector<uint32_t>{10, 11});
    CHECK(tie.chunk_kind(0) == roaring_set::container_kind::array);

    CHECK_THROWS_AS(roaring_set(std::vector<uint32_t>{2, 2}), contract_violation);
}

TEST_CASE("roaring picks the smallest serialization") {
    testutil::rng rng(640);
    for (int iter = 0; iter < 120; ++iter) {
        const auto s = mixed_set(rng, 1 << 18, rng.between(1, 30000));
        const roaring_set r(s);
        CHECK(r.decode() == s);
        CHECK(r.size() == s.size());
        // audit each chunk against the three candidate sizes
        for (size_t c = 0; c < r.num_chunks(); ++c) {
            // reconstruct the chunk contents
            std::vector<uint16_t> locals;
            for (uint32_t v : s)
                if ((v >> 16) == r.chunk_key(c)) locals.push_back(uint16_t(v & 0xffff));
            const auto runs = upart::runs_of(locals);
            const uint64_t arr_bytes = 2 * locals.size();
            const uint64_t run_bytes = 4 * runs.size();
            const uint64_t best = std::min({locals.size() < 4096 ? arr_bytes : uint64_t(1) << 60,
                                            uint64_t(8192), run_bytes});
            switch (r.chunk_kind(c)) {
                case roaring_set::container_kind::array: CHECK(arr_bytes == best); break;
                case roaring_set::container_kind::bitmap: CHECK(8192 == best); break;
                case roaring_set::container_kind::runs:
                    CHECK(run_bytes == best);
                    CHECK(run_bytes < 8192);
                    if (locals.size() < 4096) CHECK(run_bytes < arr_bytes);
                    break;
            }
        }
    }
}

TEST_CASE("slicing slice kinds") {
    std::vector<uint32_t> full(65536);
    for (uint32_t i = 0; i < 65536; ++i) full[i] = i;
    const sliced_set f(full);
    REQUIRE(f.num_slices() == 1);
    CHECK(f.kind(0) == sliced_set::slice_kind::full);
    CHECK(f.decode() == full);

    std::vector<uint32_t> dense;
    for (uint32_t i = 0; i < 30000; ++i) dense.push_back(2 * i);
    const sliced_set d(dense);
    REQUIRE(d.num_slices() == 1);
    CHECK(d.kind(0) == sliced_set::slice_kind::dense);

    std::vector<uint32_t> sparse{1, 2, 300, 70000};
    const sliced_set sp(sparse);
    REQUIRE(sp.num_slices() == 2);
    CHECK(sp.kind(0) == sliced_set::slice_kind::sparse);
    CHECK(sp.decode() == sparse);
}

TEST_CASE("both structures roundtrip random sets") {
    testutil::rng rng(2468);
    for (int iter = 0; iter < 150; ++iter) {
        const auto s = mixed_set(rng, 1 << 20, rng.between(1, 40000));
        CHECK(roaring_set(s).decode() == s);
        CHECK(sliced_set(s).decode() == s);
    }
}

TEST_CASE("intersection and union match the sorted-set oracle") {
    testutil::rng rng(1357);
    for (int iter = 0; iter < 80; ++iter) {
        const auto a = mixed_set(rng, 1 << 19, rng.between(1, 30000));
        const auto b = mixed_set(rng, 1 << 19, rng.between(1, 30000));
        const auto want_and = oracle_intersect(a, b);
        const auto want_or = oracle_union(a, b);

        const roaring_set ra(a), rb(b);
        CHECK(set_intersect(ra, rb) == want_and);
        CHECK(set_union(ra, rb) == want_or);

        const sliced_set sa(a), sb(b);
        CHECK(set_intersect(sa, sb) == want_and);
        CHECK(set_union(sa, sb) == want_or);

        // cardinality identities
        CHECK(want_and.size() <= std::min(a.size(), b.size()));
        CHECK(want_or.size() + want_and.size() == a.size() + b.size());

        // idempotence
        CHECK(set_intersect(ra, ra) == a);
        CHECK(set_union(ra, ra) == a);
        CHECK(set_intersect(sa, sa) == a);
        CHECK(set_union(sa, sa) == a);
    }
}

TEST_CASE("many small random pairs under both structures") {
    testutil::rng rng(86);
    for (int iter = 0; iter < 10000; ++iter) {
        const auto a = testutil::random_sorted_list(rng, rng.between(1, 300), 1 << 14);
        const auto b = testutil::random_sorted_list(rng, rng.between(1, 300), 1 << 14);
        const auto want_and = oracle_intersect(a, b);
        const auto want_or = oracle_union(a, b);
        const roaring_set ra(a), rb(b);
        CHECK(set_intersect(ra, rb) == want_and);
        CHECK(set_union(ra, rb) == want_or);
        if (iter % 4 == 0) {
            const sliced_set sa(a), sb(b);
            CHECK(set_intersect(sa, sb) == want_and);
            CHECK(set_union(sa, sb) == want_or);
        }
    }
}

TEST_CASE("galloping array intersection (size ratio above 32)") {
    testutil::rng rng(55);
    const auto big = testutil::random_sorted_list(rng, 3500, 1 << 16);  // one array chunk
    std::vector<uint32_t> small;
    for (size_t i = 0; i < big.size(); i += 40) small.push_back(big[i]);
    small.push_back(9);  // plus a value outside
    std::sort(small.begin(), small.end());
    small.erase(std::unique(small.begin(), small.end()), small.end());
    const roaring_set rb(big), rs(small);
    CHECK(rb.chunk_kind(0) == roaring_set::container_kind::array);
    CHECK(set_intersect(rs, rb) == oracle_intersect(small, big));
}

TEST_CASE("disjoint chunk keys") {
    std::vector<uint32_t> a{1, 2, 3}, b{100000, 100001};
    const roaring_set ra(a), rb(b);
    CHECK(set_intersect(ra, rb).empty());
    CHECK(set_union(ra, rb) == std::vector<uint32_t>{1, 2, 3, 100000, 100001});
    const sliced_set sa(a), sb(b);
    CHECK(set_intersect(sa, sb).empty());
    CHECK(set_union(sa, sb) == std::vector<uint32_t>{1, 2, 3, 100000, 100001});
}

TEST_CASE("nextgeq matches the oracle") {
    testutil::rng rng(8642);
    for (int iter = 0; iter < 40; ++iter) {
        const auto s = mixed_set(rng, 1 << 19, rng.between(1, 20000));
        const roaring_set r(s);
        const sliced_set sl(s);
        CHECK(r.nextgeq(0) == s.front());
        CHECK(sl.nextgeq(0) == s.front());
        CHECK(r.nextgeq(s.back() + 1) == exhausted);
        CHECK(sl.nextgeq(s.back() + 1) == exhausted);
        for (int q = 0; q < 1500; ++q) {
            const uint32_t x = static_cast<uint32_t>(rng.below(1 << 19));
            const auto it = std::lower_bound(s.begin(), s.end(), x);
            const uint64_t expect = it == s.end() ? exhausted : *it;
            CHECK(r.nextgeq(x) == expect);
            CHECK(sl.nextgeq(x) == expect);
        }
    }
}

TEST_CASE("serialization roundtrips") {
    testutil::rng rng(9753);
    for (int iter = 0; iter < 30; ++iter) {
        const auto s = mixed_set(rng, 1 << 19, rng.between(1, 30000));
        std::vector<uint8_t> rb, sb;
        roaring_set(s).serialize(rb);
        sliced_set(s).serialize(sb);
        size_t pos = 0;
        CHECK(roaring_set::deserialize(rb.data(), rb.size(), pos).decode() == s);
        CHECK(pos == rb.size());
        pos = 0;
        CHECK(sliced_set::deserialize(sb.data(), sb.size(), pos).decode() == s);
        CHECK(pos == sb.size());
    }
}
