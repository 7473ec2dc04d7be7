#pragma once
// codes.hpp - point-wise integer codes: unary/binary helpers, gamma, delta,
// Golomb, Rice, exponential Golomb, zeta, Fibonacci, Variable-Byte, Nibble
// and SC-dense. Every code has an encode/decode pair plus a length function
// that reports the codeword size without encoding.

#include <cmath>
#include <vector>

#include "bitbuffer.hpp"

namespace intseq {

/* gamma: unary length of bin(x) followed by its low bits */
inline void write_gamma(bit_buffer& out, uint64_t x) {
    if (x == 0) throw contract_violation("gamma: x must be >= 1");
    const unsigned nbits = bit_width_u64(x);
    out.append_unary(nbits);
    out.append_bits(x & ~(uint64_t(1) << (nbits - 1)), nbits - 1);
}

inline uint64_t read_gamma(bit_reader& in) {
    const uint64_t nbits = in.read_unary(64);
    if (nbits > 64) throw malformed_stream("gamma: length prefix too large");
    return (uint64_t(1) << (nbits - 1)) | in.read_bits(static_cast<unsigned>(nbits - 1));
}

inline unsigned gamma_length(uint64_t x) { return 2 * bit_width_u64(x) - 1; }

/* delta: gamma length of bin(x) followed by its low bits */
inline void write_delta(bit_buffer& out, uint64_t x) {
    if (x == 0) throw contract_violation("delta: x must be >= 1");
    const unsigned nbits = bit_width_u64(x);
    write_gamma(out, nbits);
    out.append_bits(x & ~(uint64_t(1) << (nbits - 1)), nbits - 1);
}

inline uint64_t read_delta(bit_reader& in) {
    const uint64_t nbits = read_gamma(in);
    if (nbits > 64) throw malformed_stream("delta: length prefix too large");
    return (uint64_t(1) << (nbits - 1)) | in.read_bits(static_cast<unsigned>(nbits - 1));
}

inline unsigned delta_length(uint64_t x) {
    const unsigned nbits = bit_width_u64(x);
    return gamma_length(nbits) + nbits - 1;
}

/* Golomb: quotient+1 in unary, remainder in leftmost minimal binary over [0, b-1] */
inline void write_golomb(bit_buffer& out, uint64_t x, uint64_t b) {
    if (x == 0 || b == 0) throw contract_violation("golomb: need x >= 1 and b >= 1");
    const uint64_t q = (x - 1) / b;
    out.append_unary(q + 1);
    out.append_minimal_binary((x - 1) % b, b);
}

inline uint64_t read_golomb(bit_reader& in, uint64_t b) {
    if (b == 0) throw contract_violation("golomb: b must be >= 1");
    const uint64_t q = in.read_unary() - 1;
    return q * b + in.read_minimal_binary(b) + 1;
}

inline uint64_t golomb_length(uint64_t x, uint64_t b) {
    return (x - 1) / b + 1 + minimal_binary_length((x - 1) % b, b);
}

// Gallager-van Voorhis rule: the b minimizing the expected Golomb code length
// when gaps are geometrically distributed with success probability p.
inline uint64_t golomb_optimal_b(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw contract_violation("golomb_optimal_b: p outside (0,1)");
    const double b = std::ceil(-std::log2(2.0 - p) / std::log2(1.0 - p));
    return b < 1.0 ? 1 : static_cast<uint64_t>(b);
}

/* Rice: Golomb with b = 2^k; the quotient can also be written in gamma */
enum class rice_quotient { unary, gamma };

inline void write_rice(bit_buffer& out, uint64_t x, unsigned k,
                       rice_quotient q = rice_quotient::unary) {
    if (x == 0 || k == 0 || k > 63) throw contract_violation("rice: need x >= 1, 1 <= k <= 63");
    const uint64_t quot = (x - 1) >> k;
    if (q == rice_quotient::unary) {
        out.append_unary(quot + 1);
    } else {
        write_gamma(out, quot + 1);
    }
    out.append_bits((x - 1) & ((uint64_t(1) << k) - 1), k);
}

inline uint64_t read_rice(bit_reader& in, unsigned k, rice_quotient q = rice_quotient::unary) {
    if (k == 0 || k > 63) throw contract_violation("rice: need 1 <= k <= 63");
    const uint64_t quot = (q == rice_quotient::unary ? in.read_unary() : read_gamma(in)) - 1;
    return (quot << k) + in.read_bits(k) + 1;
}

inline uint64_t rice_length(uint64_t x, unsigned k, rice_quotient q = rice_quotient::unary) {
    const uint64_t quot = (x - 1) >> k;
    return (q == rice_quotient::unary ? quot + 1 : gamma_length(quot + 1)) + k;
}

/* exponential Golomb: buckets [0, 2^k, 2^k + 2^(k+1), ...) */
inline void write_expgolomb(bit_buffer& out, uint64_t x, unsigned k) {
    if (x == 0 || k > 62) throw contract_violation("expgolomb: need x >= 1, k <= 62");
    uint64_t base = 0, width = uint64_t(1) << k;
    uint64_t h = 1;
    while (x > base + width) {
        base += width;
        width <<= 1;
        ++h;
        if (width == 0) throw contract_violation("expgolomb: x too large");
    }
    out.append_unary(h);
    out.append_bits(x - base - 1, static_cast<unsigned>(k + h - 1));
}

inline uint64_t read_expgolomb(bit_reader& in, unsigned k) {
    const uint64_t h = in.read_unary(64);
    if (k + h - 1 > 63) throw malformed_stream("expgolomb: bucket prefix too large");
    uint64_t base = 0, width = uint64_t(1) << k;
    for (uint64_t i = 1; i < h; ++i) {
        base += width;
        width <<= 1;
    }
    return base + in.read_bits(static_cast<unsigned>(k + h - 1)) + 1;
}

inline uint64_t expgolomb_length(uint64_t x, unsigned k) {
    uint64_t base = 0, width = uint64_t(1) << k;
    uint64_t h = 1;
    while (x > base + width) {
        base += width;
        width <<= 1;
        ++h;
    }
    return h + k + h - 1;
}

/* zeta: exponential Golomb over buckets [0, 2^k - 1, 2^2k - 1, ...) with
   leftmost minimal binary offsets */
namespace detail {
// upper bound of the h-th zeta bucket, saturating at 2^63
inline uint64_t zeta_bucket_end(unsigned k, uint64_t h) {
    return h * k >= 63 ? (uint64_t(1) << 63) : (uint64_t(1) << (h * k)) - 1;
}
}  // namespace detail

inline void write_zeta(bit_buffer& out, uint64_t x, unsigned k) {
    if (x == 0 || k == 0) throw contract_violation("zeta: need x >= 1 and k >= 1");
    if (x > (uint64_t(1) << 62)) throw contract_violation("zeta: x too large");
    uint64_t h = 1;
    while (x > detail::zeta_bucket_end(k, h)) ++h;
    const uint64_t lo = detail::zeta_bucket_end(k, h - 1);
    const uint64_t hi = detail::zeta_bucket_end(k, h);
    out.append_unary(h);
    out.append_minimal_binary(x - lo - 1, hi - lo);
}

inline uint64_t read_zeta(bit_reader& in, unsigned k) {
    const uint64_t h = in.read_unary(64);
    if (h * k > 63) throw malformed_stream("zeta: bucket prefix too large");
    const uint64_t lo = detail::zeta_bucket_end(k, h - 1);
    const uint64_t hi = detail::zeta_bucket_end(k, h);
    return lo + in.read_minimal_binary(hi - lo) + 1;
}

inline uint64_t zeta_length(uint64_t x, unsigned k) {
    uint64_t h = 1;
    while (x > detail::zeta_bucket_end(k, h)) ++h;
    const uint64_t lo = detail::zeta_bucket_end(k, h - 1);
    const uint64_t hi = detail::zeta_bucket_end(k, h);
    return h + minimal_binary_length(x - lo - 1, hi - lo);
}

/* Fibonacci: Zeckendorf sum bits, least significant number first, closed by a
   control 1 bit (so every codeword ends with "11") */
namespace detail {
inline const std::vector<uint64_t>& fibonacci_table() {
    static const std::vector<uint64_t> fibs = [] {
        std::vector<uint64_t> f{1, 2};
        for (;;) {
            const uint64_t a = f[f.size() - 2], b = f.back();
            if (b > std::numeric_limits<uint64_t>::max() - a) break;
            f.push_back(a + b);
        }
        return f;
    }();
    return fibs;
}

// index of the largest Fibonacci number <= x (0-based into the table)
inline size_t fibonacci_rank(uint64_t x) {
    const auto& f = fibonacci_table();
    size_t i = 0;
    while (i + 1 < f.size() && f[i + 1] <= x) ++i;
    return i;
}
}  // namespace detail

inline void write_fibonacci(bit_buffer& out, uint64_t x) {
    if (x == 0) throw contract_violation("fibonacci: x must be >= 1");
    const auto& f = detail::fibonacci_table();
    const size_t top = detail::fibonacci_rank(x);
    std::vector<bool> used(top + 1, false);
    uint64_t rest = x;
    for (size_t i = top + 1; i-- > 0;) {
        if (f[i] <= rest) {
            used[i] = true;
            rest -= f[i];
        }
    }
    assert(rest == 0);
    for (size_t i = 0; i <= top; ++i) out.append_bits(used[i] ? 1 : 0, 1);
    out.append_bits(1, 1);
}

inline uint64_t read_fibonacci(bit_reader& in) {
    const auto& f = detail::fibonacci_table();
    uint64_t value = 0;
    bool prev_one = false;
    for (size_t i = 0;; ++i) {
        if (in.remaining() == 0) throw malformed_stream("fibonacci: unterminated codeword");
        const bool bit = in.read_bits(1) != 0;
        if (bit && prev_one) return value;  // control bit reached
        if (bit) {
            if (i >= f.size()) throw malformed_stream("fibonacci: codeword too long");
            value += f[i];
        }
        prev_one = bit;
    }
}

inline unsigned fibonacci_length(uint64_t x) {
    return static_cast<unsigned>(detail::fibonacci_rank(x)) + 2;
}

// Codeword lengths of the original Fibonacci code for 1..x_max; the
// non-decreasing input expected by the lexicographic reassignment.
inline std::vector<uint32_t> fibonacci_lengths(uint64_t x_max) {
    if (x_max == 0) throw contract_violation("fibonacci_lengths: x_max must be >= 1");
    std::vector<uint32_t> lengths;
    lengths.reserve(x_max);
    for (uint64_t x = 1; x <= x_max; ++x) lengths.push_back(fibonacci_length(x));
    return lengths;
}

/* Variable-Byte: 7-bit groups, least significant group first; the top bit of
   a byte is 1 when another group follows */
inline void vbyte_encode(std::vector<uint8_t>& out, uint64_t x) {
    while (x >= 128) {
        out.push_back(static_cast<uint8_t>((x & 127) | 128));
        x >>= 7;
    }
    out.push_back(static_cast<uint8_t>(x));
}

inline uint64_t vbyte_decode(const uint8_t* data, size_t size, size_t& pos) {
    uint64_t value = 0;
    unsigned shift = 0;
    for (;;) {
        if (pos >= size) throw malformed_stream("vbyte: stream ends inside a codeword");
        const uint8_t byte = data[pos++];
        const uint64_t group = byte & 127;
        if (shift >= 64 || (shift > 0 && group > (std::numeric_limits<uint64_t>::max() >> shift)))
            throw malformed_stream("vbyte: value overflows 64 bits");
        value |= group << shift;
        if ((byte & 128) == 0) return value;
        shift += 7;
    }
}

inline unsigned vbyte_length(uint64_t x) {  // in bytes
    unsigned n = 1;
    while (x >= 128) {
        x >>= 7;
        ++n;
    }
    return n;
}

// Byte groups carried inside a bit stream, for codecs whose payload is bit packed.
inline void write_vbyte(bit_buffer& out, uint64_t x) {
    std::vector<uint8_t> bytes;
    vbyte_encode(bytes, x);
    for (uint8_t b : bytes) out.append_bits(b, 8);
}

inline uint64_t read_vbyte(bit_reader& in) {
    uint64_t value = 0;
    unsigned shift = 0;
    for (;;) {
        if (in.remaining() < 8) throw malformed_stream("vbyte: stream ends inside a codeword");
        const uint64_t byte = in.read_bits(8);
        const uint64_t group = byte & 127;
        if (shift >= 64 || (shift > 0 && group > (std::numeric_limits<uint64_t>::max() >> shift)))
            throw malformed_stream("vbyte: value overflows 64 bits");
        value |= group << shift;
        if ((byte & 128) == 0) return value;
        shift += 7;
    }
}

/* Nibble: the same scheme over 4-bit groups (3 data bits each) */
inline void write_nibble(bit_buffer& out, uint64_t x) {
    while (x >= 8) {
        out.append_bits(8 | (x & 7), 4);
        x >>= 3;
    }
    out.append_bits(x, 4);
}

inline uint64_t read_nibble(bit_reader& in) {
    uint64_t value = 0;
    unsigned shift = 0;
    for (;;) {
        if (in.remaining() < 4) throw malformed_stream("nibble: stream ends inside a codeword");
        const uint64_t nib = in.read_bits(4);
        const uint64_t group = nib & 7;
        if (shift >= 64 || (shift > 0 && group > (std::numeric_limits<uint64_t>::max() >> shift)))
            throw malformed_stream("nibble: value overflows 64 bits");
        value |= group << shift;
        if ((nib & 8) == 0) return value;
        shift += 3;
    }
}

inline unsigned nibble_length(uint64_t x) {  // in bits
    unsigned n = 4;
    while (x >= 8) {
        x >>= 3;
        n += 4;
    }
    return n;
}

/* SC-dense: s stopper words and c continuer words over a 2^w alphabet.
   Codewords are continuer* stopper sequences forming a dense numbering:
   the s one-word codes cover 1..s, the s*c two-word codes the next range,
   and so on. */
struct sc_params {
    uint64_t s, c;
    unsigned word_bits;

    sc_params(uint64_t s_, uint64_t c_) : s(s_), c(c_), word_bits(ceil_log2(s_ + c_)) {
        if (s == 0 || c == 0 || (uint64_t(1) << word_bits) != s + c)
            throw contract_violation("sc_params: need s, c >= 1 with s + c a power of two");
    }
};

inline void write_scdense(bit_buffer& out, uint64_t x, const sc_params& p) {
    if (x == 0) throw contract_violation("scdense: x must be >= 1");
    // find the word count k: cum(k) = s(c^k - 1)/(c - 1) values use <= k words
    unsigned __int128 cum_prev = 0;            // codes shorter than k words
    unsigned __int128 count = p.s;             // number of k-word codes
    while (x > cum_prev + count) {
        cum_prev += count;
        count *= p.c;
    }
    const unsigned __int128 z = x - cum_prev - 1;
    const uint64_t stopper = static_cast<uint64_t>(z % p.s);
    unsigned __int128 w = z / p.s;
    std::vector<uint64_t> continuers;
    while (count > p.s) {  // one digit per extra word
        continuers.push_back(p.s + static_cast<uint64_t>(w % p.c));
        w /= p.c;
        count /= p.c;
    }
    for (size_t i = continuers.size(); i-- > 0;) out.append_bits(continuers[i], p.word_bits);
    out.append_bits(stopper, p.word_bits);
}

inline uint64_t read_scdense(bit_reader& in, const sc_params& p) {
    unsigned __int128 w = 0;
    unsigned __int128 cum_prev = 0, count = p.s;
    for (;;) {
        if (in.remaining() < p.word_bits)
            throw malformed_stream("scdense: stream ends inside a codeword");
        const uint64_t word = in.read_bits(p.word_bits);
        if (word < p.s) {
            const unsigned __int128 x = cum_prev + w * p.s + word + 1;
            if (x > std::numeric_limits<uint64_t>::max())
                throw malformed_stream("scdense: value overflows 64 bits");
            return static_cast<uint64_t>(x);
        }
        w = w * p.c + (word - p.s);
        cum_prev += count;
        count *= p.c;
        if (cum_prev > std::numeric_limits<uint64_t>::max())
            throw malformed_stream("scdense: value overflows 64 bits");
    }
}

inline uint64_t scdense_length(uint64_t x, const sc_params& p) {  // in bits
    unsigned __int128 cum_prev = 0, count = p.s;
    uint64_t k = 1;
    while (x > cum_prev + count) {
        cum_prev += count;
        count *= p.c;
        ++k;
    }
    return k * p.word_bits;
}

/* the binary codeword B(x) = bin(x-1) on the minimum number of bits */
inline unsigned binary_codeword_length(uint64_t x) {
    return x <= 2 ? 1 : bit_width_u64(x - 1);
}

inline void write_binary_codeword(bit_buffer& out, uint64_t x) {
    if (x == 0) throw contract_violation("binary codeword: x must be >= 1");
    out.append_bits(x - 1, binary_codeword_length(x));
}

}  // namespace intseq
