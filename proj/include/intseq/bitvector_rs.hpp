#pragma once
// bitvector_rs.hpp - a sealed bitvector with rank and select support: absolute
// rank counts every 512 bits and the position of every 1024th set (and unset)
// bit, plus word scans in between.

#include <vector>

#include "bitbuffer.hpp"

namespace intseq {

class bit_vector_rs {
  public:
    static constexpr uint64_t rank_sample_bits = 512;
    static constexpr uint64_t select_sample = 1024;

    bit_vector_rs() = default;

    explicit bit_vector_rs(bit_buffer bits) : bits_(std::move(bits)) { build_samples(); }

    uint64_t size() const { return bits_.size_bits(); }
    uint64_t ones() const { return ones_; }
    uint64_t zeros() const { return size() - ones_; }
    const bit_buffer& bits() const { return bits_; }
    bool operator[](uint64_t pos) const { return bits_.get_bit(pos); }

    // set bits among the first i positions, 0 <= i <= size
    uint64_t rank1(uint64_t i) const {
        if (i > size()) throw contract_violation("rank1: prefix length out of range");
        const auto& words = bits_.words();
        uint64_t count = rank_samples_[i / rank_sample_bits];
        uint64_t pos = (i / rank_sample_bits) * rank_sample_bits;
        while (pos + 64 <= i) {
            count += std::popcount(words[pos / 64]);
            pos += 64;
        }
        if (i > pos) count += std::popcount(words[pos / 64] >> (64 - (i - pos)) << (64 - (i - pos)));
        return count;
    }

    uint64_t rank0(uint64_t i) const { return i - rank1(i); }

    // 1-based position of the i-th set bit, i in 1..ones
    uint64_t select1(uint64_t i) const {
        if (i == 0 || i > ones_) throw std::out_of_range("select1: rank exceeds population");
        return select_impl(i, select1_samples_, false) + 1;
    }

    // 1-based position of the i-th unset bit
    uint64_t select0(uint64_t i) const {
        if (i == 0 || i > zeros()) throw std::out_of_range("select0: rank exceeds population");
        return select_impl(i, select0_samples_, true) + 1;
    }

    void serialize(std::vector<uint8_t>& out) const {
        bits_.serialize(out);
        serialize_vec(out, rank_samples_);
        serialize_vec(out, select1_samples_);
        serialize_vec(out, select0_samples_);
    }

    static bit_vector_rs deserialize(const uint8_t* data, size_t size, size_t& pos) {
        bit_vector_rs v;
        v.bits_ = bit_buffer::deserialize(data, size, pos);
        v.rank_samples_ = deserialize_vec(data, size, pos);
        v.select1_samples_ = deserialize_vec(data, size, pos);
        v.select0_samples_ = deserialize_vec(data, size, pos);
        if (v.rank_samples_.size() != v.size() / rank_sample_bits + 1)
            throw malformed_stream("bit_vector_rs: sample table size mismatch");
        v.ones_ = v.rank_samples_.empty() ? 0 : v.rank1(v.size());
        return v;
    }

  private:
    void build_samples() {
        const auto& words = bits_.words();
        rank_samples_.assign(size() / rank_sample_bits + 1, 0);
        uint64_t count = 0;
        for (uint64_t pos = 0; pos < size(); pos += 64) {
            if (pos % rank_sample_bits == 0) rank_samples_[pos / rank_sample_bits] = count;
            uint64_t w = words[pos / 64];
            if (size() - pos < 64) w = w >> (64 - (size() - pos)) << (64 - (size() - pos));
            count += std::popcount(w);
        }
        if (size() % rank_sample_bits == 0 && !rank_samples_.empty())
            rank_samples_.back() = count;
        ones_ = count;

        for (uint64_t pos = 0, seen1 = 0, seen0 = 0; pos < size(); ++pos) {
            if (bits_.get_bit(pos)) {
                if (seen1 % select_sample == 0) select1_samples_.push_back(pos);
                ++seen1;
            } else {
                if (seen0 % select_sample == 0) select0_samples_.push_back(pos);
                ++seen0;
            }
        }
    }

    // 0-based position of the i-th matching bit; invert flips the sense
    uint64_t select_impl(uint64_t i, const std::vector<uint64_t>& samples, bool invert) const {
        const auto& words = bits_.words();
        const uint64_t idx = i - 1;
        uint64_t pos = samples[idx / select_sample];  // position of a known earlier match
        uint64_t remaining = idx % select_sample;     // matches still to skip after pos
        // scan words from pos
        uint64_t wpos = pos / 64;
        unsigned offset = static_cast<unsigned>(pos % 64);
        for (;;) {
            uint64_t w = invert ? ~words[wpos] : words[wpos];
            w = w << offset >> offset;  // clear bits before pos
            if (invert && (wpos + 1) * 64 > size()) {
                const unsigned tail = static_cast<unsigned>((wpos + 1) * 64 - size());
                w = w >> tail << tail;  // bits past the end are not zeros of the vector
            }
            const unsigned pc = static_cast<unsigned>(std::popcount(w));
            if (remaining < pc) {
                // take the (remaining+1)-th set bit of w from the high end
                for (;;) {
                    const unsigned lead = static_cast<unsigned>(std::countl_zero(w));
                    if (remaining == 0) return wpos * 64 + lead;
                    w &= ~(uint64_t(1) << (63 - lead));
                    --remaining;
                }
            }
            remaining -= pc;
            ++wpos;
            offset = 0;
        }
    }

    static void serialize_vec(std::vector<uint8_t>& out, const std::vector<uint64_t>& v) {
        bit_buffer::append_u64_le(out, v.size());
        for (uint64_t x : v) bit_buffer::append_u64_le(out, x);
    }

    static std::vector<uint64_t> deserialize_vec(const uint8_t* data, size_t size, size_t& pos) {
        const uint64_t n = bit_buffer::read_u64_le(data, size, pos);
        std::vector<uint64_t> v(n);
        for (uint64_t& x : v) x = bit_buffer::read_u64_le(data, size, pos);
        return v;
    }

    bit_buffer bits_;
    std::vector<uint64_t> rank_samples_;
    std::vector<uint64_t> select1_samples_;
    std::vector<uint64_t> select0_samples_;
    uint64_t ones_ = 0;
};

}  // namespace intseq
