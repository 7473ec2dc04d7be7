#pragma once
// benchkit.hpp - the measurement harness behind the CLI: collection
// statistics as TSV, and timed decode/AND/OR runs over any registry codec
// with optional answer verification against the uncompressed collection.

#include <chrono>
#include <iomanip>
#include <ostream>

#include "collection.hpp"
#include "golden.hpp"
#include "index.hpp"

namespace intseq {

inline void print_stats_tsv(const collection_stats& st, std::ostream& out) {
    out << "lists\t" << st.lists << "\n";
    out << "universe\t" << st.universe << "\n";
    out << "integers\t" << st.integers << "\n";
    out << std::fixed << std::setprecision(4);
    out << "gap_entropy_bits\t" << st.gap_entropy << "\n";
    out << "mean_ceil_log2_gap\t" << st.mean_ceil_log2_gap << "\n";
    for (size_t b = 0; b < collection_stats::num_buckets; ++b) {
        if (b + 1 < collection_stats::num_buckets)
            out << "gaps_le_" << (uint64_t(1) << b) << "_pct\t";
        else
            out << "gaps_gt_8192_pct\t";
        out << st.histogram_pct[b] << "\n";
    }
}

struct bench_options {
    codec_id codec = codec_id::optpfor;
    std::string op = "decode";  // decode | and | or
    double pef_epsilon = 0.03;
    bic_mode mode = bic_mode::leftmost_minimal;
    bool verify = false;
    uint32_t min_list_size = 0;  // optional pruning of short lists
    int repetitions = 3;
};

struct bench_result {
    bool verified_ok = true;
    std::string verify_message;
};

namespace benchdetail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct timing {
    double avg = 0, spread = 0;  // seconds; spread = max - min across repetitions
};

template <typename F>
timing repeat_timed(int reps, F&& body) {
    body();  // warm-up
    double mn = 1e300, mx = 0, total = 0;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const double s = seconds_since(t0);
        mn = std::min(mn, s);
        mx = std::max(mx, s);
        total += s;
    }
    return {total / reps, mx - mn};
}

inline std::vector<uint32_t> oracle_and(const collection& c, std::span<const uint32_t> terms) {
    std::vector<uint32_t> acc = c.lists[terms[0]];
    for (size_t i = 1; i < terms.size(); ++i) {
        std::vector<uint32_t> next;
        std::set_intersection(acc.begin(), acc.end(), c.lists[terms[i]].begin(),
                              c.lists[terms[i]].end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

inline std::vector<uint32_t> oracle_or(const collection& c, std::span<const uint32_t> terms) {
    std::vector<uint32_t> acc = c.lists[terms[0]];
    for (size_t i = 1; i < terms.size(); ++i) {
        std::vector<uint32_t> next;
        std::set_union(acc.begin(), acc.end(), c.lists[terms[i]].begin(),
                       c.lists[terms[i]].end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

}  // namespace benchdetail

// Runs one codec/op combination and appends TSV rows:
// codec  op  terms  gib  bits_per_int  ns_per_int  ms_per_query  rep_spread_pct
inline bench_result run_bench(const collection& full,
                              const std::vector<std::vector<uint32_t>>& queries,
                              const bench_options& opt, std::ostream& out) {
    bench_result result;
    collection pruned;
    const collection* c = &full;
    if (opt.min_list_size > 0) {
        pruned.universe = full.universe;
        for (const auto& l : full.lists)
            if (l.size() >= opt.min_list_size) pruned.lists.push_back(l);
        c = &pruned;
    }

    codec_config cfg;
    cfg.codec = opt.codec;
    cfg.pef_epsilon = opt.pef_epsilon;
    cfg.mode = opt.mode;
    const inverted_index index(c->universe, c->lists, cfg);

    const uint64_t ints = index.total_integers();
    const uint64_t bits = index.total_payload_bits();
    const double gib = double(bits) / 8.0 / double(uint64_t(1) << 30);
    const double bits_per_int = double(bits) / double(ints);

    // Elias-Fano space audit: payload within n ceil(log2(U/n)) + 2n per list
    if (opt.codec == codec_id::ef) {
        bool ok = true;
        for (uint32_t t = 0; t < index.num_lists(); ++t) {
            const elias_fano* ef = index.list(t).as_ef();
            const uint64_t n = ef->size();
            if (ef->payload_bits() > n * ceil_log2_ratio(c->universe, n) + 2 * n) ok = false;
        }
        out << "# ef space bound audit: " << (ok ? "within n*ceil(log2(U/n)) + 2n on every list"
                                                 : "VIOLATED")
            << "\n";
    }

    out << std::fixed << std::setprecision(4);
    const std::string name = codec_name(opt.codec);

    if (opt.op == "decode") {
        if (opt.verify) {
            for (uint32_t t = 0; t < index.num_lists(); ++t)
                if (index.list(t).decode() != c->lists[t]) {
                    result.verified_ok = false;
                    result.verify_message = "decode mismatch on list " + std::to_string(t);
                    return result;
                }
        }
        std::vector<uint32_t> sink;
        uint64_t decoded = 0;
        const auto t = benchdetail::repeat_timed(opt.repetitions, [&] {
            decoded = 0;
            for (uint32_t term = 0; term < index.num_lists(); ++term) {
                sink.clear();
                index.list(term).decode_into(sink);
                decoded += sink.size();
            }
        });
        out << name << "\tdecode\t-\t" << gib << "\t" << bits_per_int << "\t"
            << t.avg * 1e9 / double(decoded) << "\t-\t" << 100.0 * t.spread / std::max(t.avg, 1e-12)
            << "\n";
        return result;
    }

    if (opt.op != "and" && opt.op != "or") throw contract_violation("unknown op: " + opt.op);
    const bool is_and = opt.op == "and";

    // bucket the queries by term count: 2, 3, 4, 5+
    std::array<std::vector<const std::vector<uint32_t>*>, 4> buckets;
    for (const auto& q : queries) {
        if (q.size() < 2) continue;
        buckets[std::min<size_t>(q.size(), 5) - 2].push_back(&q);
    }

    if (opt.verify) {
        for (const auto& q : queries) {
            if (q.size() < 2) continue;
            const auto got = is_and ? index.and_query(q) : index.or_query(q);
            const auto want =
                is_and ? benchdetail::oracle_and(*c, q) : benchdetail::oracle_or(*c, q);
            if (got != want) {
                result.verified_ok = false;
                result.verify_message = opt.op + " answer mismatch";
                return result;
            }
        }
    }

    double total_avg = 0, total_spread = 0;
    uint64_t total_queries = 0;
    static const char* bucket_names[4] = {"2", "3", "4", "5+"};
    for (size_t b = 0; b < 4; ++b) {
        if (buckets[b].empty()) continue;
        uint64_t matched = 0;
        const auto t = benchdetail::repeat_timed(opt.repetitions, [&] {
            matched = 0;
            for (const auto* q : buckets[b])
                matched += is_and ? index.and_query(*q).size() : index.or_query(*q).size();
        });
        (void)matched;
        out << name << "\t" << opt.op << "\t" << bucket_names[b] << "\t" << gib << "\t"
            << bits_per_int << "\t-\t" << t.avg * 1e3 / double(buckets[b].size()) << "\t"
            << 100.0 * t.spread / std::max(t.avg, 1e-12) << "\n";
        total_avg += t.avg;
        total_spread += t.spread;
        total_queries += buckets[b].size();
    }
    if (total_queries > 0)
        out << name << "\t" << opt.op << "\tavg\t" << gib << "\t" << bits_per_int << "\t-\t"
            << total_avg * 1e3 / double(total_queries) << "\t"
            << 100.0 * total_spread / std::max(total_avg, 1e-12) << "\n";
    return result;
}

}  // namespace intseq
