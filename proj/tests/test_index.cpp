#include "doctest.h"

#include <algorithm>
#include <vector>

#include "intseq/collection.hpp"
#include "intseq/index.hpp"
#include "test_util.hpp"

using namespace intseq;

namespace {

std::vector<codec_id> every_codec() {
    std::vector<codec_id> ids;
    for (const auto& [name, id] : codec_registry()) ids.push_back(id);
    return ids;
}

std::vector<uint32_t> oracle_and(const std::vector<std::vector<uint32_t>>& lists,
                                 std::span<const uint32_t> terms) {
    std::vector<uint32_t> acc = lists[terms[0]];
    for (size_t i = 1; i < terms.size(); ++i) {
        std::vector<uint32_t> next;
        std::set_intersection(acc.begin(), acc.end(), lists[terms[i]].begin(),
                              lists[terms[i]].end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

std::vector<uint32_t> oracle_or(const std::vector<std::vector<uint32_t>>& lists,
                                std::span<const uint32_t> terms) {
    std::vector<uint32_t> acc = lists[terms[0]];
    for (size_t i = 1; i < terms.size(); ++i) {
        std::vector<uint32_t> next;
        std::set_union(acc.begin(), acc.end(), lists[terms[i]].begin(), lists[terms[i]].end(),
                       std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

std::vector<std::vector<uint32_t>> toy_lists(testutil::rng& rng, size_t count,
                                             uint32_t universe) {
    std::vector<std::vector<uint32_t>> lists;
    for (size_t i = 0; i < count; ++i) {
        const size_t n = rng.between(1, 3000);
        lists.push_back(rng.below(2) == 0 ? testutil::random_sorted_list(rng, n, universe)
                                          : testutil::clustered_sorted_list(rng, n, universe));
    }
    return lists;
}

}  // namespace

TEST_CASE("codec registry names") {
    CHECK(codec_registry().size() == 18);
    CHECK(codec_from_name("optpfor") == codec_id::optpfor);
    CHECK(codec_name(codec_from_name("pef")) == "pef");
    CHECK_THROWS_AS(codec_from_name("nope"), contract_violation);
}

TEST_CASE("every codec builds and decodes back a toy collection") {
    testutil::rng rng(515253);
    const uint32_t universe = 1 << 18;
    const auto lists = toy_lists(rng, 6, universe);
    for (codec_id id : every_codec()) {
        CAPTURE(codec_name(id));
        codec_config cfg;
        cfg.codec = id;
        const inverted_index index(universe, lists, cfg);
        for (uint32_t t = 0; t < lists.size(); ++t) {
            CHECK(index.list(t).decode() == lists[t]);
            CHECK(index.list(t).size() == lists[t].size());
        }
        CHECK(index.total_integers() > 0);
        CHECK(double(index.total_payload_bits()) / double(index.total_integers()) > 0.0);
    }
}

TEST_CASE("hand-checkable intersection") {
    std::vector<std::vector<uint32_t>> lists{{3, 4, 7, 13}, {4, 13, 25}};
    codec_config cfg;
    cfg.codec = codec_id::ef;
    const inverted_index index(32, lists, cfg);
    CHECK(index.and_query(std::vector<uint32_t>{0, 1}) == std::vector<uint32_t>{4, 13});
    CHECK(index.and_query(std::vector<uint32_t>{1, 0}) == std::vector<uint32_t>{4, 13});
    CHECK(index.and_query(std::vector<uint32_t>{0, 0}) == lists[0]);  // idempotence
    CHECK(index.or_query(std::vector<uint32_t>{0, 1}) ==
          std::vector<uint32_t>{3, 4, 7, 13, 25});
    CHECK_THROWS_AS(index.and_query(std::vector<uint32_t>{0}), contract_violation);
    CHECK_THROWS_AS(index.and_query(std::vector<uint32_t>{0, 9}), contract_violation);
}

TEST_CASE("queries match the oracle for every codec") {
    testutil::rng rng(77);
    const uint32_t universe = 1 << 17;
    const auto lists = toy_lists(rng, 8, universe);
    std::vector<std::vector<uint32_t>> queries;
    for (int q = 0; q < 60; ++q) {
        std::vector<uint32_t> terms;
        const size_t k = rng.between(2, 5);
        for (size_t i = 0; i < k; ++i) terms.push_back(static_cast<uint32_t>(rng.below(8)));
        queries.push_back(terms);
    }
    std::vector<std::vector<std::vector<uint32_t>>> answers_and, answers_or;
    for (codec_id id : every_codec()) {
        CAPTURE(codec_name(id));
        codec_config cfg;
        cfg.codec = id;
        const inverted_index index(universe, lists, cfg);
        std::vector<std::vector<uint32_t>> got_and, got_or;
        for (const auto& q : queries) {
            got_and.push_back(index.and_query(q));
            got_or.push_back(index.or_query(q));
            CHECK(got_and.back() == oracle_and(lists, q));
            CHECK(got_or.back() == oracle_or(lists, q));
            // inclusion-exclusion on two-term queries
            if (q.size() == 2)
                CHECK(got_and.back().size() + got_or.back().size() ==
                      lists[q[0]].size() + lists[q[1]].size());
        }
        answers_and.push_back(std::move(got_and));
        answers_or.push_back(std::move(got_or));
    }
    // codec-differential: all codecs agree with each other
    for (size_t i = 1; i < answers_and.size(); ++i) {
        CHECK(answers_and[i] == answers_and[0]);
        CHECK(answers_or[i] == answers_or[0]);
    }
}

TEST_CASE("query answers are invariant under term order") {
    testutil::rng rng(31);
    const auto lists = toy_lists(rng, 5, 1 << 16);
    codec_config cfg;
    cfg.codec = codec_id::roaring;
    const inverted_index index(1 << 16, lists, cfg);
    std::vector<uint32_t> terms{0, 2, 4};
    const auto base_and = index.and_query(terms);
    const auto base_or = index.or_query(terms);
    std::sort(terms.begin(), terms.end(), std::greater<>());
    CHECK(index.and_query(terms) == base_and);
    CHECK(index.or_query(terms) == base_or);
}

TEST_CASE("nextgeq-based AND agrees with decode-then-merge for all codecs") {
    testutil::rng rng(4);
    const auto lists = toy_lists(rng, 4, 1 << 16);
    for (codec_id id : every_codec()) {
        codec_config cfg;
        cfg.codec = id;
        const inverted_index index(1 << 16, lists, cfg);
        const std::vector<uint32_t> terms{0, 1, 2, 3};
        // decode-then-merge route
        std::vector<uint32_t> acc = index.list(0).decode();
        for (uint32_t t = 1; t < 4; ++t) {
            std::vector<uint32_t> next;
            const auto l = index.list(t).decode();
            std::set_intersection(acc.begin(), acc.end(), l.begin(), l.end(),
                                  std::back_inserter(next));
            acc = std::move(next);
        }
        CHECK(index.and_query(terms) == acc);
    }
}

TEST_CASE("mixed per-list codec map round-trips") {
    testutil::rng rng(99);
    const auto lists = toy_lists(rng, 6, 1 << 16);
    codec_config cfg;
    cfg.codec = codec_id::vbyte;
    cfg.per_list[1] = codec_id::ef;
    cfg.per_list[2] = codec_id::roaring;
    cfg.per_list[3] = codec_id::bic;
    cfg.per_list[4] = codec_id::pef;
    const inverted_index index(1 << 16, lists, cfg);
    CHECK(index.list(0).codec() == codec_id::vbyte);
    CHECK(index.list(1).codec() == codec_id::ef);
    CHECK(index.list(2).codec() == codec_id::roaring);
    for (uint32_t t = 0; t < 6; ++t) CHECK(index.list(t).decode() == lists[t]);
    // queries still work across mixed codecs
    CHECK(index.and_query(std::vector<uint32_t>{1, 2, 3}) ==
          oracle_and(lists, std::vector<uint32_t>{1, 2, 3}));
    CHECK(index.or_query(std::vector<uint32_t>{0, 2, 4}) ==
          oracle_or(lists, std::vector<uint32_t>{0, 2, 4}));
}

TEST_CASE("stats: entropy and histogram") {
    // all gaps equal: zero entropy
    collection constant;
    constant.universe = 1000;
    constant.lists.push_back({4, 9, 14, 19});  // gaps 5,5,5,5
    const auto st0 = compute_stats(constant);
    CHECK(st0.gap_entropy == doctest::Approx(0.0));

    // half the gaps 1, half 2: exactly one bit
    collection half;
    half.universe = 1000;
    std::vector<uint32_t> list;
    uint32_t pos = 0;
    for (int i = 0; i < 8; ++i) {
        pos += 1;
        list.push_back(pos - 1);
        pos += 2;
        list.push_back(pos - 1);
    }
    // to_gaps turns this into alternating 1s and 2s
    half.lists.push_back(list);
    const auto st1 = compute_stats(half);
    CHECK(st1.gap_entropy == doctest::Approx(1.0));

    // histogram of gaps [1,1,2,3,9000]
    collection h;
    h.universe = 20000;
    h.lists.push_back({0, 1, 3, 6, 9006});  // gaps 1,1,2,3,9000
    const auto st2 = compute_stats(h);
    CHECK(st2.histogram_pct[0] == doctest::Approx(40.0));
    CHECK(st2.histogram_pct[1] == doctest::Approx(20.0));
    CHECK(st2.histogram_pct[2] == doctest::Approx(20.0));
    CHECK(st2.histogram_pct[14] == doctest::Approx(20.0));
    double sum = 0;
    for (double p : st2.histogram_pct) sum += p;
    CHECK(sum == doctest::Approx(100.0).epsilon(1e-9));

    CHECK_THROWS_AS(compute_stats(collection{}), contract_violation);
}
