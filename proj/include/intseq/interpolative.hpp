#pragma once
// interpolative.hpp - binary interpolative coding of sorted sequences. The
// middle element is written relative to the running (l, h) bounds, then both
// halves are coded recursively; maximal runs of consecutive values cost zero
// bits. Midpoints can be written in plain binary or minimal binary (leftmost
// or centered assignment).

#include <span>
#include <vector>

#include "codes.hpp"

namespace intseq {

enum class bic_mode { plain, leftmost_minimal, centered_minimal };

// (written value, codeword bits) per pre-order node, for inspection
using bic_trace = std::vector<std::pair<uint64_t, uint32_t>>;

namespace detail {

inline void bic_write_mid(bit_buffer& out, uint64_t v, uint64_t range, bic_mode mode,
                          bic_trace* trace) {
    uint32_t bits = 0;
    switch (mode) {
        case bic_mode::plain:
            bits = ceil_log2(range);
            out.append_bits(v, bits);
            break;
        case bic_mode::leftmost_minimal:
            bits = minimal_binary_length(v, range, mb_mode::leftmost);
            out.append_minimal_binary(v, range, mb_mode::leftmost);
            break;
        case bic_mode::centered_minimal:
            bits = minimal_binary_length(v, range, mb_mode::centered);
            out.append_minimal_binary(v, range, mb_mode::centered);
            break;
    }
    if (trace) trace->emplace_back(v, bits);
}

inline uint64_t bic_read_mid(bit_reader& in, uint64_t range, bic_mode mode) {
    switch (mode) {
        case bic_mode::plain: {
            const uint64_t v = in.read_bits(ceil_log2(range));
            if (v >= range) throw malformed_stream("interpolative: midpoint out of range");
            return v;
        }
        case bic_mode::leftmost_minimal: return in.read_minimal_binary(range, mb_mode::leftmost);
        case bic_mode::centered_minimal: return in.read_minimal_binary(range, mb_mode::centered);
    }
    return 0;  // unreachable
}

struct bic_frame {
    size_t a, b;  // element indices, inclusive; empty when a > b
    uint64_t l, h;
};

}  // namespace detail

// Encodes S[1..n] under bounds l <= S[1], S[n] <= h. The traversal is
// iterative pre-order, an explicit stack standing in for the recursion.
inline void bic_encode(std::span<const uint32_t> s, uint64_t l, uint64_t h, bic_mode mode,
                       bit_buffer& out, bic_trace* trace = nullptr) {
    if (s.empty()) return;
    if (l > s.front() || h < s.back())
        throw contract_violation("interpolative: bounds do not contain the sequence");
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] <= s[i - 1]) throw contract_violation("interpolative: input not strictly increasing");

    std::vector<detail::bic_frame> stack{{0, s.size() - 1, l, h}};
    while (!stack.empty()) {
        const auto [a, b, lo, hi] = stack.back();
        stack.pop_back();
        const uint64_t n = b - a + 1;
        if (lo + n - 1 == hi) continue;  // a run: the bounds force every value
        const uint64_t m = (n + 1) / 2;  // 1-based midpoint within the segment
        const size_t g = a + m - 1;
        const uint64_t range = hi - lo - n + 2;  // midpoint can take this many values
        detail::bic_write_mid(out, s[g] - lo - m + 1, range, mode, trace);
        if (g + 1 <= b) stack.push_back({g + 1, b, uint64_t(s[g]) + 1, hi});
        if (g >= a + 1) stack.push_back({a, g - 1, lo, uint64_t(s[g]) - 1});
    }
}

// Exact inverse of bic_encode for the same (n, l, h, mode).
inline void bic_decode(bit_reader& in, size_t n, uint64_t l, uint64_t h, bic_mode mode,
                       std::span<uint32_t> out) {
    if (n == 0) return;
    if (out.size() < n) throw contract_violation("interpolative: output span too small");
    if (h < l + n - 1) throw malformed_stream("interpolative: bounds cannot hold n values");
    std::vector<detail::bic_frame> stack{{0, n - 1, l, h}};
    while (!stack.empty()) {
        const auto [a, b, lo, hi] = stack.back();
        stack.pop_back();
        const uint64_t len = b - a + 1;
        if (lo + len - 1 == hi) {
            for (uint64_t i = 0; i < len; ++i) out[a + i] = static_cast<uint32_t>(lo + i);
            continue;
        }
        const uint64_t m = (len + 1) / 2;
        const size_t g = a + m - 1;
        const uint64_t range = hi - lo - len + 2;
        const uint64_t v = detail::bic_read_mid(in, range, mode) + lo + m - 1;
        out[g] = static_cast<uint32_t>(v);
        if (g + 1 <= b) stack.push_back({g + 1, b, v + 1, hi});
        if (g >= a + 1) stack.push_back({a, g - 1, lo, v - 1});
    }
}

// Self-contained record: n and the last value in delta codes, then the first
// n-1 elements coded over [0, S[n] - 1]. It is always safe to anchor l at 0
// and derive h from the transmitted last value.
inline void bic_list_encode(std::span<const uint32_t> s, bic_mode mode, bit_buffer& out) {
    if (s.empty()) throw contract_violation("interpolative: empty list");
    write_delta(out, s.size());
    write_delta(out, uint64_t(s.back()) - s.size() + 2);  // last - (n-1), shifted to >= 1
    if (s.size() > 1) bic_encode(s.subspan(0, s.size() - 1), 0, uint64_t(s.back()) - 1, mode, out);
}

inline std::vector<uint32_t> bic_list_decode(bit_reader& in, bic_mode mode) {
    const uint64_t n = read_delta(in);
    const uint64_t last = read_delta(in) + n - 2;
    std::vector<uint32_t> out(n);
    if (n > 1) bic_decode(in, n - 1, 0, last - 1, mode, {out.data(), n - 1});
    out[n - 1] = static_cast<uint32_t>(last);
    return out;
}

}  // namespace intseq
