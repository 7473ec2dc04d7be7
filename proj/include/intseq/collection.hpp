#pragma once
// collection.hpp - on-disk collection and query formats, the synthetic corpus
// generator, and gap statistics.
//
// A collection file is a stream of 32-bit little-endian unsigned integers:
// a first record [1][universe], then one record [n][x_1..x_n] per list with
// the x strictly increasing and below the universe.

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "blockcodecs.hpp"

namespace intseq {

struct collection {
    uint32_t universe = 0;
    std::vector<std::vector<uint32_t>> lists;

    uint64_t total_integers() const {
        uint64_t n = 0;
        for (const auto& l : lists) n += l.size();
        return n;
    }
};

namespace detail {

inline void put_u32(std::ostream& out, uint32_t v) {
    const uint8_t bytes[4] = {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16), uint8_t(v >> 24)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

inline bool get_u32(std::istream& in, uint32_t& v) {
    uint8_t bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) return false;
    v = uint32_t(bytes[0]) | uint32_t(bytes[1]) << 8 | uint32_t(bytes[2]) << 16 |
        uint32_t(bytes[3]) << 24;
    return true;
}

}  // namespace detail

inline void write_collection(const std::string& path, const collection& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    detail::put_u32(out, 1);
    detail::put_u32(out, c.universe);
    for (const auto& list : c.lists) {
        detail::put_u32(out, static_cast<uint32_t>(list.size()));
        for (uint32_t x : list) detail::put_u32(out, x);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Rejects malformed files with the record index in the message.
inline collection read_collection(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    collection c;
    uint32_t one = 0;
    if (!detail::get_u32(in, one) || one != 1 || !detail::get_u32(in, c.universe))
        throw malformed_stream(path + ": missing [1][universe] header record");
    for (uint32_t record = 1;; ++record) {
        uint32_t n = 0;
        if (!detail::get_u32(in, n)) break;  // clean end of file
        if (n == 0)
            throw malformed_stream(path + ": record " + std::to_string(record) + " is empty");
        std::vector<uint32_t> list(n);
        for (uint32_t i = 0; i < n; ++i) {
            if (!detail::get_u32(in, list[i]))
                throw malformed_stream(path + ": record " + std::to_string(record) +
                                       " truncated at element " + std::to_string(i));
            if (list[i] >= c.universe)
                throw malformed_stream(path + ": record " + std::to_string(record) + " element " +
                                       std::to_string(i) + " outside the universe");
            if (i > 0 && list[i] <= list[i - 1])
                throw malformed_stream(path + ": record " + std::to_string(record) +
                                       " not strictly increasing at element " + std::to_string(i));
        }
        c.lists.push_back(std::move(list));
    }
    return c;
}

// Text queries: one per line, whitespace-separated termIDs.
inline std::vector<std::vector<uint32_t>> read_queries(const std::string& path,
                                                       uint32_t num_terms) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<std::vector<uint32_t>> queries;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<uint32_t> q;
        uint64_t t;
        while (ss >> t) {
            if (t >= num_terms)
                throw malformed_stream(path + ":" + std::to_string(lineno) +
                                       ": termID outside the lexicon");
            q.push_back(static_cast<uint32_t>(t));
        }
        if (!q.empty()) queries.push_back(std::move(q));
    }
    return queries;
}

/* synthetic corpora */
struct synth_params {
    uint32_t lists = 100;
    uint32_t universe = 100000;
    double density = 0.05;    // expected fraction of the universe per list
    double clustering = 0.5;  // fraction of gaps equal to one, grouped in runs
    uint64_t seed = 0;
};

namespace detail {

struct splitmix {
    uint64_t state;
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double unit() { return (next() >> 11) * 0x1.0p-53; }
    // geometric on {1, 2, ...} with success probability q
    uint64_t geometric(double q) {
        return 1 + static_cast<uint64_t>(std::log(unit() + 1e-300) / std::log1p(-q));
    }
};

}  // namespace detail

// Lists alternate runs of consecutive docIDs with stretches of geometric
// jumps: clustering c puts fraction c of the gaps at one, grouped into runs of
// mean length ~200c, so clustered corpora look like URL-ordered indexes. At
// c = 0 the gaps are exactly geometric with parameter equal to the density.
inline collection synthesize(const synth_params& p) {
    if (p.lists == 0 || p.universe == 0 || !(p.density > 0.0) || p.density > 1.0 ||
        p.clustering < 0.0 || p.clustering > 1.0)
        throw contract_violation("synthesize: bad parameters");
    if (p.density * p.universe < 1.0)
        throw contract_violation("synthesize: density * universe below one element");

    collection c;
    c.universe = p.universe;
    const double jump_q =
        p.clustering >= 1.0 ? 1.0
                            : std::min(1.0, (1.0 - p.clustering) / (1.0 / p.density - p.clustering));
    const size_t target = static_cast<size_t>(p.density * p.universe + 0.5);
    const double cycle = 200.0;

    for (uint32_t t = 0; t < p.lists; ++t) {
        detail::splitmix rng{p.seed * 0x9e3779b97f4a7c15ull + t + 1};
        std::vector<uint32_t> list;
        list.reserve(target);
        uint64_t pos = rng.geometric(jump_q) - 1;
        while (list.size() < target && pos < p.universe) {
            // a run of consecutive docIDs
            uint64_t run = p.clustering == 0.0
                               ? 0
                               : static_cast<uint64_t>(
                                     std::ceil(-std::log(rng.unit() + 1e-300) * cycle * p.clustering));
            for (uint64_t i = 0; i + 1 <= run && list.size() < target && pos < p.universe; ++i)
                list.push_back(static_cast<uint32_t>(pos++));
            // a stretch of geometric jumps
            uint64_t jumps = p.clustering >= 1.0
                                 ? 0
                                 : static_cast<uint64_t>(std::ceil(
                                       -std::log(rng.unit() + 1e-300) * cycle * (1.0 - p.clustering)));
            for (uint64_t i = 0; i + 1 <= jumps && list.size() < target && pos < p.universe; ++i) {
                list.push_back(static_cast<uint32_t>(pos));
                pos += rng.geometric(jump_q);
            }
            if (p.clustering >= 1.0 && run == 0) break;
        }
        if (list.empty()) list.push_back(static_cast<uint32_t>(rng.next() % p.universe));
        c.lists.push_back(std::move(list));
    }
    return c;
}

/* gap statistics */
struct collection_stats {
    uint64_t lists = 0;
    uint64_t universe = 0;
    uint64_t integers = 0;
    double gap_entropy = 0.0;        // empirical entropy of the pooled gaps, bits
    double mean_ceil_log2_gap = 0.0;
    // buckets [1][2][4]...[8192][>8192]: percentage of gaps per bucket
    static constexpr size_t num_buckets = 15;
    std::array<double, num_buckets> histogram_pct{};
};

inline collection_stats compute_stats(const collection& c) {
    if (c.lists.empty()) throw contract_violation("compute_stats: empty collection");
    collection_stats st;
    st.lists = c.lists.size();
    st.universe = c.universe;

    std::unordered_map<uint64_t, uint64_t> counts;
    uint64_t total = 0;
    double ceil_log_sum = 0;
    std::array<uint64_t, collection_stats::num_buckets> buckets{};
    for (const auto& list : c.lists) {
        for (uint64_t g : to_gaps(list)) {
            ++counts[g];
            ++total;
            ceil_log_sum += ceil_log2(g);
            const unsigned w = g <= 1 ? 0 : bit_width_u64(g - 1);  // bucket of 2^w
            buckets[std::min<size_t>(w, collection_stats::num_buckets - 1)] += 1;
        }
    }
    st.integers = total;
    double entropy = 0;
    for (const auto& [g, n] : counts) {
        const double p = double(n) / double(total);
        entropy -= p * std::log2(p);
    }
    st.gap_entropy = entropy;
    st.mean_ceil_log2_gap = ceil_log_sum / double(total);
    for (size_t b = 0; b < buckets.size(); ++b)
        st.histogram_pct[b] = 100.0 * double(buckets[b]) / double(total);
    return st;
}

// closed-form entropy of the geometric distribution with parameter q
inline double geometric_entropy(double q) {
    return (-(1.0 - q) * std::log2(1.0 - q) - q * std::log2(q)) / q;
}

}  // namespace intseq
