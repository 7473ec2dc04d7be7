#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "intseq/benchkit.hpp"
#include "intseq/collection.hpp"
#include "test_util.hpp"

using namespace intseq;

namespace {

struct temp_file {
    std::string path;
    explicit temp_file(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~temp_file() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("collection file roundtrip") {
    collection c;
    c.universe = 1000;
    c.lists = {{0, 5, 9}, {1, 2, 3, 999}};
    temp_file f("intseq_test_col.bin");
    write_collection(f.path, c);
    const collection back = read_collection(f.path);
    CHECK(back.universe == c.universe);
    CHECK(back.lists == c.lists);

    // the file is the raw u32 stream
    std::ifstream in(f.path, std::ios::binary);
    std::vector<uint32_t> words(9);
    in.read(reinterpret_cast<char*>(words.data()), 9 * 4);
    CHECK(words[0] == 1);
    CHECK(words[1] == 1000);
    CHECK(words[2] == 3);
    CHECK(words[3] == 0);
}

TEST_CASE("malformed collections are rejected with diagnostics") {
    temp_file f("intseq_test_bad.bin");

    auto write_words = [&](const std::vector<uint32_t>& words) {
        std::ofstream out(f.path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(words.data()),
                  static_cast<std::streamsize>(words.size() * 4));
    };

    write_words({2, 1000});  // header record must be [1][universe]
    CHECK_THROWS_AS(read_collection(f.path), malformed_stream);

    write_words({1, 1000, 3, 5, 5, 9});  // not strictly increasing
    CHECK_THROWS_WITH_AS(read_collection(f.path),
                         doctest::Contains("record 1 not strictly increasing at element 1"),
                         malformed_stream);

    write_words({1, 10, 2, 5, 11});  // out of universe
    CHECK_THROWS_WITH_AS(read_collection(f.path), doctest::Contains("outside the universe"),
                         malformed_stream);

    write_words({1, 10, 3, 1, 2});  // truncated record
    CHECK_THROWS_WITH_AS(read_collection(f.path), doctest::Contains("truncated"),
                         malformed_stream);

    write_words({1, 10, 0});  // empty record
    CHECK_THROWS_WITH_AS(read_collection(f.path), doctest::Contains("record 1 is empty"),
                         malformed_stream);
}

TEST_CASE("query files") {
    temp_file f("intseq_test_q.txt");
    {
        std::ofstream out(f.path);
        out << "0 1\n\n2 3 4\n1\n";
    }
    const auto qs = read_queries(f.path, 5);
    REQUIRE(qs.size() == 3);
    CHECK(qs[0] == std::vector<uint32_t>{0, 1});
    CHECK(qs[1] == std::vector<uint32_t>{2, 3, 4});
    CHECK_THROWS_AS(read_queries(f.path, 3), malformed_stream);  // term 4 out of lexicon
}

TEST_CASE("synthesis is deterministic byte for byte") {
    synth_params p;
    p.lists = 20;
    p.universe = 50000;
    p.density = 0.03;
    p.clustering = 0.6;
    p.seed = 42;
    const collection a = synthesize(p);
    const collection b = synthesize(p);
    CHECK(a.universe == b.universe);
    CHECK(a.lists == b.lists);

    temp_file fa("intseq_synth_a.bin"), fb("intseq_synth_b.bin");
    write_collection(fa.path, a);
    write_collection(fb.path, b);
    std::ifstream ia(fa.path, std::ios::binary), ib(fb.path, std::ios::binary);
    const std::string da((std::istreambuf_iterator<char>(ia)), std::istreambuf_iterator<char>());
    const std::string db((std::istreambuf_iterator<char>(ib)), std::istreambuf_iterator<char>());
    CHECK(da == db);

    p.seed = 43;
    CHECK(synthesize(p).lists != a.lists);

    CHECK_THROWS_AS(synthesize(synth_params{10, 100, 0.001, 0.5, 1}), contract_violation);
}

TEST_CASE("clustering dials the gap distribution") {
    synth_params p;
    p.lists = 30;
    p.universe = 200000;
    p.density = 0.05;
    p.seed = 7;

    // c = 0: gaps follow a geometric law with parameter = density
    p.clustering = 0.0;
    const collection uniform = synthesize(p);
    uint64_t total = 0;
    std::array<uint64_t, 12> freq{};
    for (const auto& l : uniform.lists) {
        const auto gaps = to_gaps(l);
        for (size_t i = 1; i < gaps.size(); ++i) {  // skip the base gap
            ++total;
            if (gaps[i] <= freq.size()) ++freq[gaps[i] - 1];
        }
    }
    for (size_t g = 1; g <= 10; ++g) {
        const double expect = 0.05 * std::pow(0.95, double(g - 1));
        const double got = double(freq[g - 1]) / double(total);
        CHECK(std::abs(got - expect) < 0.01);  // loose sanity band
    }
    const auto ust = compute_stats(uniform);
    CHECK(ust.gap_entropy ==
          doctest::Approx(geometric_entropy(0.05)).epsilon(0.05));

    // c = 1: nearly every gap is one
    p.clustering = 1.0;
    const collection runs = synthesize(p);
    uint64_t ones = 0, count = 0;
    for (const auto& l : runs.lists)
        for (size_t i = 1; i < l.size(); ++i) {
            ++count;
            if (l[i] == l[i - 1] + 1) ++ones;
        }
    CHECK(double(ones) / double(count) >= 0.9);

    // clustered corpora carry less gap entropy than uniform ones
    p.clustering = 0.7;
    const auto cst = compute_stats(synthesize(p));
    CHECK(cst.gap_entropy < ust.gap_entropy);
}

TEST_CASE("stats TSV output shape") {
    synth_params p;
    p.lists = 5;
    p.universe = 10000;
    p.density = 0.02;
    p.clustering = 0.3;
    p.seed = 3;
    const auto st = compute_stats(synthesize(p));
    std::ostringstream out;
    print_stats_tsv(st, out);
    const std::string text = out.str();
    CHECK(text.find("lists\t5") != std::string::npos);
    CHECK(text.find("universe\t10000") != std::string::npos);
    CHECK(text.find("gap_entropy_bits\t") != std::string::npos);
    CHECK(text.find("gaps_gt_8192_pct\t") != std::string::npos);
    // histogram sums to 100
    double sum = 0;
    for (double x : st.histogram_pct) sum += x;
    CHECK(sum == doctest::Approx(100.0).epsilon(1e-6));
}

TEST_CASE("bench smoke on a tiny corpus") {
    synth_params p;
    p.lists = 8;
    p.universe = 20000;
    p.density = 0.03;
    p.clustering = 0.5;
    p.seed = 11;
    const collection c = synthesize(p);
    std::vector<std::vector<uint32_t>> queries;
    testutil::rng rng(5);
    for (int q = 0; q < 12; ++q) {
        std::vector<uint32_t> terms;
        for (size_t i = 0, k = rng.between(2, 6); i < k; ++i)
            terms.push_back(static_cast<uint32_t>(rng.below(8)));
        queries.push_back(terms);
    }
    for (const char* op : {"decode", "and", "or"}) {
        bench_options opt;
        opt.codec = codec_id::pef;
        opt.op = op;
        opt.verify = true;
        opt.repetitions = 1;
        std::ostringstream out;
        const bench_result r = run_bench(c, queries, opt, out);
        CHECK(r.verified_ok);
        CHECK(out.str().find("pef\t") != std::string::npos);
    }
}

TEST_CASE("bench honors --min-list-size pruning") {
    collection c;
    c.universe = 1000;
    c.lists = {{1, 2, 3}, {5, 6, 7, 8, 9, 10, 11, 12}, {100}};
    bench_options opt;
    opt.codec = codec_id::ef;
    opt.op = "decode";
    opt.repetitions = 1;
    opt.min_list_size = 4;  // keeps only the 8-element list
    std::ostringstream out;
    run_bench(c, {}, opt, out);
    // bits/int is computed over the surviving 8 integers only
    const std::string text = out.str();
    const size_t row = text.find("ef\tdecode");
    REQUIRE(row != std::string::npos);
    std::istringstream ls(text.substr(row));
    std::string codec_col, op_col, terms_col, gib_col, bpi_col;
    std::getline(ls, codec_col, '\t');
    std::getline(ls, op_col, '\t');
    std::getline(ls, terms_col, '\t');
    std::getline(ls, gib_col, '\t');
    std::getline(ls, bpi_col, '\t');
    const elias_fano only(c.lists[1], c.universe);
    CHECK(std::stod(bpi_col) == doctest::Approx(double(only.payload_bits()) / 8.0));
}

TEST_CASE("golden vectors all pass, and a corrupted table is named") {
    size_t count = 0;
    bool ok = run_golden([&](const std::string&, bool pass, const std::string&) {
        ++count;
        CHECK(pass);
    });
    CHECK(ok);
    CHECK(count >= 16);

    // a deliberately corrupted expected table yields a named failure
    const auto err = golden_detail::check_sample_canonical_tables(
        {0, 1, 2, 2, 4, 4, 8, 8, 9}, {0, 0, 64, 65, 96, 96, 112, 112, 127});
    REQUIRE(err.has_value());
    CHECK(err->find("values[]") != std::string::npos);
}
