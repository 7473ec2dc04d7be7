// intseq - compressed posting list toolbox: corpus synthesis, gap statistics,
// golden codeword vectors, and a decode/AND/OR benchmark over every codec in
// the registry.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or input error.

#include <iostream>

#include "CLI11.hpp"
#include "intseq/benchkit.hpp"

using namespace intseq;

namespace {

int cmd_stats(const std::string& path) {
    const collection c = read_collection(path);
    print_stats_tsv(compute_stats(c), std::cout);
    return 0;
}

int cmd_synth(const synth_params& params, const std::string& out_path,
              const std::string& queries_path, uint32_t queries_per_bucket) {
    const collection c = synthesize(params);
    write_collection(out_path, c);
    std::cerr << "wrote " << c.lists.size() << " lists, " << c.total_integers()
              << " integers to " << out_path << "\n";
    if (!queries_path.empty()) {
        std::ofstream q(queries_path);
        if (!q) throw std::runtime_error("cannot write " + queries_path);
        detail::splitmix rng{params.seed ^ 0xabcdef12345ull};
        for (uint32_t terms = 2; terms <= 5; ++terms) {
            for (uint32_t i = 0; i < queries_per_bucket; ++i) {
                // "5" stands for five or more
                const uint32_t k = terms < 5 ? terms : 5 + uint32_t(rng.next() % 3);
                for (uint32_t t = 0; t < k; ++t)
                    q << rng.next() % c.lists.size() << (t + 1 == k ? '\n' : ' ');
            }
        }
        std::cerr << "wrote " << 4 * queries_per_bucket << " queries to " << queries_path << "\n";
    }
    return 0;
}

int cmd_bench(const std::string& collection_path, const std::string& queries_path,
              const bench_options& opt) {
    const collection c = read_collection(collection_path);
    std::vector<std::vector<uint32_t>> queries;
    if (!queries_path.empty())
        queries = read_queries(queries_path, static_cast<uint32_t>(c.lists.size()));
    if (opt.op != "decode" && queries.empty())
        throw std::runtime_error("op '" + opt.op + "' needs --queries");
    std::cout << "codec\top\tterms\tGiB\tbits_per_int\tns_per_int\tms_per_query\trep_spread_pct\n";
    const bench_result r = run_bench(c, queries, opt, std::cout);
    if (!r.verified_ok) {
        std::cerr << "verification failed: " << r.verify_message << "\n";
        return 1;
    }
    return 0;
}

int cmd_golden() {
    const bool ok = run_golden([](const std::string& name, bool pass, const std::string& err) {
        std::cout << (pass ? "ok   " : "FAIL ") << name;
        if (!pass) std::cout << " -- " << err;
        std::cout << "\n";
    });
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compressed posting list toolbox"};
    app.require_subcommand(1);

    std::string collection_path, queries_path, out_path, codec_name_arg = "optpfor",
                                                         op = "decode", mode_arg = "leftmost";
    synth_params sp;
    bench_options bopt;
    uint32_t queries_per_bucket = 0;

    CLI::App* stats = app.add_subcommand("stats", "gap statistics of a collection");
    stats->add_option("collection", collection_path, "collection file")->required();

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic collection");
    synth->add_option("--lists", sp.lists, "number of posting lists")->required();
    synth->add_option("--universe", sp.universe, "number of documents")->required();
    synth->add_option("--density", sp.density, "expected list size / universe")->required();
    synth->add_option("--clustering", sp.clustering, "fraction of unit gaps, in runs")
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--seed", sp.seed, "generator seed");
    synth->add_option("--out", out_path, "output collection file")->required();
    synth->add_option("--queries-out", queries_path, "also write random queries here");
    synth->add_option("--queries-per-bucket", queries_per_bucket,
                      "queries per term-count bucket (2,3,4,5+)")
        ->default_val(250);

    CLI::App* bench = app.add_subcommand("bench", "time decode or boolean queries");
    bench->add_option("--codec", codec_name_arg, "codec registry name")->required();
    bench->add_option("--collection", collection_path, "collection file")->required();
    bench->add_option("--queries", queries_path, "query file (one termID list per line)");
    bench->add_option("--op", op, "decode | and | or")->required();
    bench->add_flag("--verify", bopt.verify, "check answers against the plain collection first");
    bench->add_option("--epsilon", bopt.pef_epsilon, "partitioned Elias-Fano approximation")
        ->check(CLI::Range(1e-6, 0.999));
    bench->add_option("--mode", mode_arg, "interpolative midpoints: plain | leftmost | centered");
    bench->add_option("--min-list-size", bopt.min_list_size, "drop lists shorter than this");
    bench->add_option("--seed", sp.seed, "accepted for reproducible pipelines");
    bench->add_option("--repetitions", bopt.repetitions, "timing repetitions")->default_val(3);

    CLI::App* golden = app.add_subcommand("golden", "check the reference codeword vectors");
    (void)golden;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (stats->parsed()) return cmd_stats(collection_path);
        if (synth->parsed()) return cmd_synth(sp, out_path, queries_path, queries_per_bucket);
        if (bench->parsed()) {
            bopt.codec = codec_from_name(codec_name_arg);
            bopt.op = op;
            if (mode_arg == "plain") bopt.mode = bic_mode::plain;
            else if (mode_arg == "leftmost") bopt.mode = bic_mode::leftmost_minimal;
            else if (mode_arg == "centered") bopt.mode = bic_mode::centered_minimal;
            else throw std::runtime_error("unknown --mode: " + mode_arg);
            return cmd_bench(collection_path, queries_path, bopt);
        }
        return cmd_golden();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
