#pragma once
// golden.hpp - reference codeword vectors: the worked examples every build
// must reproduce bit for bit. Each vector returns an error string on
// mismatch, naming what was expected and what came out.

#include <functional>
#include <optional>
#include <sstream>

#include "canonical.hpp"
#include "dac.hpp"
#include "eliasfano.hpp"
#include "interpolative.hpp"
#include "blockcodecs.hpp"

namespace intseq {

struct golden_vector {
    std::string name;
    std::function<std::optional<std::string>()> run;  // nullopt on success
};

namespace golden_detail {

inline std::optional<std::string> expect_bits(const std::string& what, const bit_buffer& got,
                                              const std::string& expected) {
    if (got.to_string() == expected) return std::nullopt;
    return what + ": expected " + expected + ", got " + got.to_string();
}

template <typename T>
inline std::optional<std::string> expect_eq(const std::string& what, const T& got,
                                            const T& expected) {
    if (got == expected) return std::nullopt;
    std::ostringstream ss;
    ss << what << ": expected " << expected << ", got " << got;
    return ss.str();
}

// the two compact canonical arrays for the sample code, checkable against
// corrupted fixtures in tests
inline std::optional<std::string> check_sample_canonical_tables(
    const std::vector<uint64_t>& first, const std::vector<uint64_t>& values) {
    const canonical_code code({1, 3, 3, 5, 5, 5, 5, 7});
    if (code.first() != first) return std::string("canonical first[] differs from the reference");
    if (code.values() != values) return std::string("canonical values[] differs from the reference");
    return std::nullopt;
}

}  // namespace golden_detail

inline std::vector<golden_vector> golden_vectors() {
    using golden_detail::expect_bits;
    using golden_detail::expect_eq;
    std::vector<golden_vector> v;

    v.push_back({"unary, binary, gamma, delta, golomb-2, expgolomb-2, zeta-2 codewords of 1..8", [] {
        struct row { uint64_t x; const char *u, *b, *g, *d, *g2, *e2, *z2; };
        static const row table[] = {
            {1, "0", "0", "0", "0", "00", "000", "00"},
            {2, "10", "1", "100", "1000", "01", "001", "010"},
            {3, "110", "10", "101", "1001", "100", "010", "011"},
            {4, "1110", "11", "11000", "10100", "101", "011", "10000"},
            {5, "11110", "100", "11001", "10101", "1100", "10000", "10001"},
            {6, "111110", "101", "11010", "10110", "1101", "10001", "10010"},
            {7, "1111110", "110", "11011", "10111", "11100", "10010", "10011"},
            {8, "11111110", "111", "1110000", "11000000", "11101", "10011", "101000"},
        };
        for (const row& r : table) {
            bit_buffer u, b, g, d, g2, e2, z2;
            u.append_unary(r.x);
            write_binary_codeword(b, r.x);
            write_gamma(g, r.x);
            write_delta(d, r.x);
            write_golomb(g2, r.x, 2);
            write_expgolomb(e2, r.x, 2);
            write_zeta(z2, r.x, 2);
            for (auto [got, want] : {std::pair<const bit_buffer&, const char*>{u, r.u},
                                     {b, r.b}, {g, r.g}, {d, r.d}, {g2, r.g2}, {e2, r.e2},
                                     {z2, r.z2}}) {
                if (got.to_string() != want)
                    return std::optional<std::string>("x=" + std::to_string(r.x) + ": expected " +
                                                      want + ", got " + got.to_string());
            }
        }
        return std::optional<std::string>{};
    }});

    v.push_back({"gamma(113) and delta(113)", [] {
        bit_buffer g, d;
        write_gamma(g, 113);
        write_delta(d, 113);
        if (auto e = expect_bits("gamma(113)", g, "1111110110001")) return e;
        return expect_bits("delta(113)", d, "11011110001");
    }});

    v.push_back({"canonical compact tables of the sample code", [] {
        return golden_detail::check_sample_canonical_tables(
            {0, 1, 2, 2, 4, 4, 8, 8, 9}, {0, 0, 64, 64, 96, 96, 112, 112, 127});
    }});

    v.push_back({"canonical encode(4) = 11000", [] {
        const canonical_code code({1, 3, 3, 5, 5, 5, 5, 7});
        bit_buffer b;
        code.encode(4, b);
        return expect_bits("encode(4)", b, "11000");
    }});

    v.push_back({"canonical decode of buffer 1010100", [] {
        const canonical_code code({1, 3, 3, 5, 5, 5, 5, 7});
        bit_buffer stream;
        stream.append_bits(0b1010100, 7);
        bit_reader r(stream);
        canonical_decoder dec(code, r);
        const uint64_t symbol = dec.decode();
        if (auto e = expect_eq<uint64_t>("first symbol", symbol, 3)) return e;
        // three bits consumed: the rest of the buffer decodes 1 then 2
        if (auto e = expect_eq<uint64_t>("second symbol", dec.decode(), 1)) return e;
        return expect_eq<uint64_t>("third symbol", dec.decode(), 2);
    }});

    v.push_back({"fibonacci codewords of 1..8", [] {
        static const char* table[8] = {"11", "011", "0011", "1011",
                                       "00011", "10011", "01011", "000011"};
        for (uint64_t x = 1; x <= 8; ++x) {
            bit_buffer b;
            write_fibonacci(b, x);
            if (auto e = expect_bits("fibonacci(" + std::to_string(x) + ")", b, table[x - 1]))
                return e;
        }
        return std::optional<std::string>{};
    }});

    v.push_back({"lexicographic codewords from lengths [2,3,4,4,5,5,5,6]", [] {
        static const char* table[8] = {"00", "010", "0110", "0111",
                                       "10000", "10001", "10010", "100110"};
        const auto words = assign_lexicographic({2, 3, 4, 4, 5, 5, 5, 6});
        for (size_t i = 0; i < 8; ++i)
            if (words[i].to_string() != table[i])
                return std::optional<std::string>("codeword " + std::to_string(i + 1) +
                                                  ": expected " + table[i] + ", got " +
                                                  words[i].to_string());
        return std::optional<std::string>{};
    }});

    v.push_back({"golomb b=5 remainder codewords", [] {
        static const char* rem[5] = {"00", "01", "10", "110", "111"};
        for (uint64_t r = 0; r < 5; ++r) {
            bit_buffer b;
            b.append_minimal_binary(r, 5);
            if (auto e = expect_bits("remainder " + std::to_string(r), b, rem[r])) return e;
        }
        return std::optional<std::string>{};
    }});

    v.push_back({"zeta-3 codeword of 147", [] {
        bit_buffer b;
        write_zeta(b, 147, 3);
        return expect_bits("zeta3(147)", b, "110010010011");
    }});

    v.push_back({"sc-dense (4,4) and (5,3) codewords of 1..20", [] {
        static const char* t44[20] = {"000", "001", "010", "011", "100000", "100001", "100010",
                                      "100011", "101000", "101001", "101010", "101011", "110000",
                                      "110001", "110010", "110011", "111000", "111001", "111010",
                                      "111011"};
        static const char* t53[20] = {"000", "001", "010", "011", "100", "101000", "101001",
                                      "101010", "101011", "101100", "110000", "110001", "110010",
                                      "110011", "110100", "111000", "111001", "111010", "111011",
                                      "111100"};
        const sc_params sc44(4, 4), sc53(5, 3);
        for (uint64_t x = 1; x <= 20; ++x) {
            bit_buffer a, b;
            write_scdense(a, x, sc44);
            write_scdense(b, x, sc53);
            if (auto e = expect_bits("sc(4,4) x=" + std::to_string(x), a, t44[x - 1])) return e;
            if (auto e = expect_bits("sc(5,3) x=" + std::to_string(x), b, t53[x - 1])) return e;
        }
        bit_buffer b13;
        write_scdense(b13, 13, sc53);
        return expect_bits("sc(5,3) x=13", b13, "110010");
    }});

    v.push_back({"simple9 selector table: 9 ways to fill 28 bits", [] {
        static const unsigned integers[9] = {28, 14, 9, 7, 5, 4, 3, 2, 1};
        static const unsigned bits[9] = {1, 2, 3, 4, 5, 7, 9, 14, 28};
        static const unsigned wasted[9] = {0, 0, 1, 0, 3, 0, 1, 0, 0};
        if (std::size(simple9_traits::table) != 9)
            return std::optional<std::string>("selector count is not 9");
        for (size_t i = 0; i < 9; ++i) {
            const simple_config& cfg = simple9_traits::table[i];
            if (cfg.capacity() != integers[i] || cfg.seg[0].width != bits[i] ||
                28 - cfg.bits_used() != wasted[i])
                return std::optional<std::string>("selector " + std::to_string(i) +
                                                  " row mismatch");
        }
        return std::optional<std::string>{};
    }});

    v.push_back({"pfor worked block at b=2, k=4", [] {
        const std::vector<uint64_t> block{3, 4, 7, 21, 9, 12, 5, 16, 6, 2, 34};
        const std::vector<uint64_t> slots{1, 2, 5, 15, 7, 10, 3, 15, 4, 0, 15};
        bit_buffer buf;
        pfor_encode(buf, block, 2, 4);
        bit_reader r(buf);
        if (read_gamma(r) - 1 != 2 || r.read_bits(6) != 4)
            return std::optional<std::string>("header mismatch");
        if (read_gamma(r) - 1 != 3) return std::optional<std::string>("expected 3 exceptions");
        for (size_t i = 0; i < slots.size(); ++i)
            if (r.read_bits(4) != slots[i])
                return std::optional<std::string>("slot " + std::to_string(i) + " mismatch");
        for (uint64_t want : {21, 16, 34})
            if (read_vbyte(r) != want)
                return std::optional<std::string>("exception value mismatch");
        return std::optional<std::string>{};
    }});

    v.push_back({"elias-fano encoding of the 12-element sample", [] {
        const std::vector<uint32_t> s{3, 4, 7, 13, 14, 15, 21, 25, 36, 38, 54, 62};
        const elias_fano ef(s, 64);
        if (auto e = expect_eq<unsigned>("low bits", ef.low_bits(), 3)) return e;
        if (ef.high().bits().to_string() != "11101110101011001010")
            return std::optional<std::string>("high bitvector differs: got " +
                                              ef.high().bits().to_string());
        std::string lows;
        for (const char* r : {"011", "100", "111", "101", "110", "111", "101", "001", "100",
                              "110", "110", "110"})
            lows += r;
        if (ef.low().to_string() != lows)
            return std::optional<std::string>("low bits differ: got " + ef.low().to_string());
        if (auto e = expect_eq<uint64_t>("access(4)", ef.access(4), 13)) return e;
        if (auto e = expect_eq<uint64_t>("select0(3)", ef.high().select0(3), 10)) return e;
        if (auto e = expect_eq<uint64_t>("select1(4)", ef.high().select1(4), 5)) return e;
        return expect_eq<uint64_t>("nextgeq(30)", ef.nextgeq(30), 36);
    }});

    v.push_back({"interpolative recursion trace of the 11-element sample", [] {
        const std::vector<uint32_t> s{3, 4, 7, 13, 14, 15, 21, 25, 36, 38, 54};
        const std::vector<uint64_t> values{10, 5, 3, 0, 5, 18, 5, 3, 1, 15};
        const std::vector<uint32_t> lengths{6, 4, 3, 2, 3, 6, 5, 4, 5, 5};
        bit_buffer out;
        bic_trace trace;
        bic_encode(s, 0, 62, bic_mode::plain, out, &trace);
        if (trace.size() != values.size())
            return std::optional<std::string>("trace length mismatch");
        for (size_t i = 0; i < trace.size(); ++i)
            if (trace[i].first != values[i] || trace[i].second != lengths[i])
                return std::optional<std::string>(
                    "node " + std::to_string(i) + ": expected (" + std::to_string(values[i]) +
                    "," + std::to_string(lengths[i]) + "), got (" +
                    std::to_string(trace[i].first) + "," + std::to_string(trace[i].second) + ")");
        return expect_eq<uint64_t>("total payload bits", out.size_bits(), 43);
    }});

    v.push_back({"directly-addressable code of the 8-element sample, b=3", [] {
        const std::vector<uint64_t> s{2, 7, 12, 5, 13, 142, 61, 129};
        const dac_vector d(s, 3);
        if (d.control(0).bits().to_string() != "00101111")
            return std::optional<std::string>("first control bitmap differs: got " +
                                              d.control(0).bits().to_string());
        return expect_eq<uint64_t>("access(5)", d.access(5), 13);
    }});

    v.push_back({"rank over the 12-bit sample bitvector", [] {
        bit_buffer raw;
        for (char c : std::string("010001101110")) raw.append_bits(c == '1', 1);
        const bit_vector_rs b(std::move(raw));
        if (auto e = expect_eq<uint64_t>("rank1(6)", b.rank1(6), 2)) return e;
        return expect_eq<uint64_t>("rank0(8)", b.rank0(8), 5);
    }});

    return v;
}

// every vector in one pass; reports per-vector outcomes through the sink
inline bool run_golden(const std::function<void(const std::string&, bool,
                                                const std::string&)>& report) {
    bool all_ok = true;
    for (const golden_vector& g : golden_vectors()) {
        const auto err = g.run();
        report(g.name, !err.has_value(), err.value_or(""));
        if (err) all_ok = false;
    }
    return all_ok;
}

}  // namespace intseq
