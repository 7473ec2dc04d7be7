#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace intseq {

// Thrown when a decoder meets input that cannot be produced by the matching
// encoder (truncated stream, impossible prefix, runaway unary, ...).
struct malformed_stream : std::runtime_error {
    explicit malformed_stream(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a caller violates an operation precondition.
struct contract_violation : std::invalid_argument {
    explicit contract_violation(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown by codecs whose format cannot hold a value (e.g. a 28-bit packed
// slot); callers may fall back to a wider representation.
struct value_overflow : std::runtime_error {
    explicit value_overflow(const std::string& what) : std::runtime_error(what) {}
};

// Sentinel returned by every nextgeq-style operation when no element >= x exists.
inline constexpr uint64_t exhausted = std::numeric_limits<uint64_t>::max();

inline constexpr unsigned bit_width_u64(uint64_t x) {
    return static_cast<unsigned>(std::bit_width(x));
}

// Bits needed to distinguish n values, i.e. ceil(log2(n)) for n >= 1.
inline constexpr unsigned ceil_log2(uint64_t n) {
    return n <= 1 ? 0 : bit_width_u64(n - 1);
}

inline constexpr uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

// ceil(log2(u/n)) for integers u, n >= 1: the smallest l with n * 2^l >= u.
inline constexpr unsigned ceil_log2_ratio(uint64_t u, uint64_t n) {
    if (u <= n) return 0;
    const unsigned guess = bit_width_u64(u) - bit_width_u64(n);
    return (n << guess) >= u ? guess : guess + 1;
}

}  // namespace intseq
