#pragma once
// bitbuffer.hpp - growable MSB-first bit string with positional readers.

#include <cassert>
#include <cstring>
#include <vector>

#include "common.hpp"

namespace intseq {

enum class mb_mode { leftmost, centered };

namespace detail {

// Index of the first value given a short codeword by the centered assignment
// over [0, b-1]. Centered codes are the leftmost assignment applied to the
// values rotated so that the middle of the range comes first.
inline uint64_t centered_rotation(uint64_t b) {
    const uint64_t r = b - 1;
    const unsigned k = ceil_log2(b);
    const uint64_t c = (uint64_t(1) << k) - b;  // number of 1-bit-shorter codewords
    if (c == 0) return 0;
    return (r % 2 == 0) ? r / 2 - c / 2 : r / 2 - c / 2 + 1;
}

}  // namespace detail

// Number of bits of the minimal binary codeword of x in [0, b-1].
inline unsigned minimal_binary_length(uint64_t x, uint64_t b, mb_mode mode = mb_mode::leftmost) {
    if (b == 0 || x >= b) throw contract_violation("minimal_binary: x out of [0, b)");
    if (b == 1) return 0;
    const unsigned k = ceil_log2(b);
    const uint64_t c = (uint64_t(1) << k) - b;
    if (mode == mb_mode::centered) {
        const uint64_t lo = detail::centered_rotation(b);
        x = (x + b - lo) % b;
    }
    return x < c ? k - 1 : k;
}

// A single-writer bit string. Bit 0 is the most significant bit of word 0;
// the physical backing is a word array filled from the high bit down.
// Once sealed (no more appends), any number of bit_readers may read it.
class bit_buffer {
  public:
    bit_buffer() = default;

    uint64_t size_bits() const { return size_; }
    bool empty() const { return size_ == 0; }
    const std::vector<uint64_t>& words() const { return words_; }

    // Appends the width low bits of value, most significant first.
    void append_bits(uint64_t value, unsigned width) {
        if (width > 64) throw contract_violation("append_bits: width > 64");
        if (width < 64 && (value >> width) != 0)
            throw contract_violation("append_bits: value does not fit width");
        if (width == 0) return;
        const uint64_t pos = size_;
        size_ += width;
        if (words_.size() * 64 < size_) words_.resize((size_ + 63) / 64, 0);
        const unsigned off = pos % 64;
        const unsigned avail = 64 - off;
        if (width <= avail) {
            words_[pos / 64] |= (avail == 64 && width == 64) ? value : value << (avail - width);
        } else {
            const unsigned rest = width - avail;
            words_[pos / 64] |= value >> rest;
            words_[pos / 64 + 1] |= value << (64 - rest);
        }
    }

    // Unary code of x >= 1: a run of x-1 ones plus a final zero.
    void append_unary(uint64_t x) {
        if (x == 0) throw contract_violation("append_unary: x must be >= 1");
        uint64_t ones = x - 1;
        while (ones >= 64) {
            append_bits(~uint64_t(0), 64);
            ones -= 64;
        }
        // remaining ones plus the terminating zero
        append_bits(((uint64_t(1) << ones) - 1) << 1, static_cast<unsigned>(ones) + 1);
    }

    // Minimal binary codeword of x in [0, b-1]. With c = ceil(log2 b), the
    // leftmost assignment gives the first 2^c - b values c-1 bits and the
    // rest c bits; b = 1 emits nothing.
    void append_minimal_binary(uint64_t x, uint64_t b, mb_mode mode = mb_mode::leftmost) {
        if (b == 0 || x >= b) throw contract_violation("append_minimal_binary: x out of [0, b)");
        if (b == 1) return;
        if (b > (uint64_t(1) << 63)) throw contract_violation("append_minimal_binary: b too large");
        if (mode == mb_mode::centered) {
            const uint64_t lo = detail::centered_rotation(b);
            x = (x + b - lo) % b;
        }
        const unsigned k = ceil_log2(b);
        const uint64_t c = (uint64_t(1) << k) - b;
        if (x < c) {
            append_bits(x, k - 1);
        } else {
            append_bits(x + c, k);
        }
    }

    void append_buffer(const bit_buffer& other) {
        uint64_t pos = 0;
        while (pos < other.size_) {
            const unsigned chunk = static_cast<unsigned>(std::min<uint64_t>(64, other.size_ - pos));
            append_bits(other.get_bits(pos, chunk), chunk);
            pos += chunk;
        }
    }

    // Reads width bits at absolute position pos, most significant first.
    uint64_t get_bits(uint64_t pos, unsigned width) const {
        assert(width <= 64);
        if (pos + width > size_) throw malformed_stream("get_bits: read past end of buffer");
        if (width == 0) return 0;
        const unsigned off = pos % 64;
        const unsigned avail = 64 - off;
        const uint64_t hi = words_[pos / 64];
        if (width <= avail) {
            const uint64_t shifted = (off == 0) ? hi : hi << off;
            return width == 64 ? shifted : shifted >> (64 - width);
        }
        const unsigned rest = width - avail;
        const uint64_t head = hi & ((uint64_t(1) << avail) - 1);
        return (head << rest) | (words_[pos / 64 + 1] >> (64 - rest));
    }

    bool get_bit(uint64_t pos) const {
        if (pos >= size_) throw malformed_stream("get_bit: read past end of buffer");
        return (words_[pos / 64] >> (63 - pos % 64)) & 1;
    }

    void set_bit(uint64_t pos) {
        assert(pos < size_);
        words_[pos / 64] |= uint64_t(1) << (63 - pos % 64);
    }

    // Appends n zero bits.
    void append_zeros(uint64_t n) {
        while (n >= 64) {
            append_bits(0, 64);
            n -= 64;
        }
        if (n) append_bits(0, static_cast<unsigned>(n));
    }

    bool operator==(const bit_buffer& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }

    // Wire format: [u64 LE bit length][ceil(length/64) u64 LE words].
    void serialize(std::vector<uint8_t>& out) const {
        append_u64_le(out, size_);
        for (uint64_t w : words_) append_u64_le(out, w);
    }

    static bit_buffer deserialize(const uint8_t* data, size_t size, size_t& pos) {
        bit_buffer b;
        b.size_ = read_u64_le(data, size, pos);
        const size_t nwords = (b.size_ + 63) / 64;
        b.words_.resize(nwords);
        for (size_t i = 0; i < nwords; ++i) b.words_[i] = read_u64_le(data, size, pos);
        return b;
    }

    static void append_u64_le(std::vector<uint8_t>& out, uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    static uint64_t read_u64_le(const uint8_t* data, size_t size, size_t& pos) {
        if (pos + 8 > size) throw malformed_stream("truncated serialized bit buffer");
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(data[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }

    // Renders the whole buffer as a 0/1 string; test and debugging helper.
    std::string to_string() const {
        std::string s;
        s.reserve(size_);
        for (uint64_t i = 0; i < size_; ++i) s.push_back(get_bit(i) ? '1' : '0');
        return s;
    }

  private:
    std::vector<uint64_t> words_;
    uint64_t size_ = 0;
};

// A private read cursor over a sealed bit_buffer.
class bit_reader {
  public:
    explicit bit_reader(const bit_buffer& buf, uint64_t start = 0) : buf_(&buf), pos_(start) {}

    uint64_t position() const { return pos_; }
    uint64_t remaining() const { return buf_->size_bits() - pos_; }
    void seek(uint64_t pos) { pos_ = pos; }

    uint64_t read_bits(unsigned width) {
        const uint64_t v = buf_->get_bits(pos_, width);
        pos_ += width;
        return v;
    }

    // Like read_bits but zero-pads past the end of the stream; used by
    // decoders that keep a hot buffer of fixed width.
    uint64_t take_padded(unsigned width) {
        const uint64_t avail = remaining();
        if (avail >= width) return read_bits(width);
        const unsigned have = static_cast<unsigned>(avail);
        const uint64_t v = have ? read_bits(have) : 0;
        return width == 64 && have == 0 ? 0 : v << (width - have);
    }

    // Inverse of append_unary. A run longer than max_run aborts decoding.
    uint64_t read_unary(uint64_t max_run = uint64_t(1) << 32) {
        uint64_t ones = 0;
        for (;;) {
            const uint64_t avail = remaining();
            if (avail == 0) throw malformed_stream("read_unary: no terminating zero");
            const unsigned chunk = static_cast<unsigned>(std::min<uint64_t>(64, avail));
            const uint64_t w = buf_->get_bits(pos_, chunk);
            const unsigned lead =
                static_cast<unsigned>(std::countl_one(w << (64 - chunk)));
            if (lead < chunk) {
                pos_ += lead + 1;
                ones += lead;
                if (ones > max_run) throw malformed_stream("read_unary: run exceeds cap");
                return ones + 1;
            }
            pos_ += chunk;
            ones += chunk;
            if (ones > max_run) throw malformed_stream("read_unary: run exceeds cap");
        }
    }

    uint64_t read_minimal_binary(uint64_t b, mb_mode mode = mb_mode::leftmost) {
        if (b == 0) throw contract_violation("read_minimal_binary: b must be >= 1");
        if (b == 1) return 0;
        const unsigned k = ceil_log2(b);
        const uint64_t c = (uint64_t(1) << k) - b;
        uint64_t x = read_bits(k - 1);
        if (x >= c) x = (x << 1 | read_bits(1)) - c;
        if (mode == mb_mode::centered) {
            const uint64_t lo = detail::centered_rotation(b);
            x = (x + lo) % b;
        }
        return x;
    }

    const bit_buffer& buffer() const { return *buf_; }

  private:
    const bit_buffer* buf_;
    uint64_t pos_;
};

}  // namespace intseq
