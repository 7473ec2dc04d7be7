#pragma once
// eliasfano.hpp - Elias-Fano encoding of a strictly increasing sequence over a
// universe U: every value splits into l = ceil(log2(U/n)) low bits stored
// verbatim and a high part coded in unary over a select-capable bitvector.

#include <span>

#include "bitvector_rs.hpp"

namespace intseq {

class elias_fano {
  public:
    elias_fano() = default;

    elias_fano(std::span<const uint32_t> s, uint64_t universe) {
        if (s.empty()) throw contract_violation("elias_fano: empty sequence");
        if (s.back() >= universe) throw contract_violation("elias_fano: back() must be < universe");
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] <= s[i - 1]) throw contract_violation("elias_fano: input not strictly increasing");
        n_ = s.size();
        universe_ = universe;
        low_bits_ = ceil_log2_ratio(universe, n_);

        bit_buffer low;
        const uint64_t low_mask = low_bits_ == 64 ? ~uint64_t(0) : (uint64_t(1) << low_bits_) - 1;
        for (uint64_t v : s) low.append_bits(v & low_mask, low_bits_);
        low_ = std::move(low);

        // one 1 per element at position high(v) + i, one 0 closing each bucket
        const uint64_t buckets = ((universe - 1) >> low_bits_) + 1;
        bit_buffer high;
        high.append_zeros(n_ + buckets);
        for (uint64_t i = 1; i <= n_; ++i) high.set_bit((uint64_t(s[i - 1]) >> low_bits_) + i - 1);
        high_ = bit_vector_rs(std::move(high));
    }

    uint64_t size() const { return n_; }
    uint64_t universe() const { return universe_; }
    unsigned low_bits() const { return low_bits_; }
    const bit_vector_rs& high() const { return high_; }
    const bit_buffer& low() const { return low_; }

    // H + L bits; the quantity bounded by n ceil(log2(U/n)) + 2n
    uint64_t payload_bits() const { return high_.size() + low_.size_bits(); }

    // i is 1-based
    uint64_t access(uint64_t i) const {
        if (i == 0 || i > n_) throw contract_violation("elias_fano: index out of range");
        const uint64_t high_part = high_.select1(i) - i;
        return (high_part << low_bits_) | low_field(i - 1);
    }

    uint64_t nextgeq(uint64_t x) const { return nextgeq_index(x).second; }

    // (1-based index, value) of the smallest element >= x
    std::pair<uint64_t, uint64_t> nextgeq_index(uint64_t x) const {
        if (x >= universe_) return {0, exhausted};
        const uint64_t hx = x >> low_bits_;
        const uint64_t max_bucket = (universe_ - 1) >> low_bits_;
        if (hx > max_bucket) return {0, exhausted};
        // elements with high part == hx sit, 1-based, in [i, j]
        const uint64_t i = hx == 0 ? 1 : high_.select0(hx) - hx + 1;
        const uint64_t j = high_.select0(hx + 1) - hx - 1;
        const uint64_t low_x = low_bits_ ? x & ((uint64_t(1) << low_bits_) - 1) : 0;
        // within the bucket the low fields are sorted: binary search them
        uint64_t lo = i, hi = j + 1;
        while (lo < hi) {
            const uint64_t mid = lo + (hi - lo) / 2;
            if (low_field(mid - 1) < low_x) lo = mid + 1;
            else hi = mid;
        }
        if (lo <= j) return {lo, (hx << low_bits_) | low_field(lo - 1)};
        if (j + 1 > n_) return {0, exhausted};
        return {j + 1, access(j + 1)};  // first element of a later bucket
    }

    std::vector<uint32_t> decode() const {
        std::vector<uint32_t> out;
        out.reserve(n_);
        uint64_t bucket = 0, idx = 0;
        const uint64_t hsize = high_.size();
        for (uint64_t pos = 0; pos < hsize; ++pos) {
            if (high_[pos]) {
                out.push_back(static_cast<uint32_t>((bucket << low_bits_) | low_field(idx)));
                ++idx;
            } else {
                ++bucket;
            }
        }
        return out;
    }

    void serialize(std::vector<uint8_t>& out) const {
        bit_buffer::append_u64_le(out, n_);
        bit_buffer::append_u64_le(out, universe_);
        low_.serialize(out);
        high_.serialize(out);
    }

    static elias_fano deserialize(const uint8_t* data, size_t size, size_t& pos) {
        elias_fano ef;
        ef.n_ = bit_buffer::read_u64_le(data, size, pos);
        ef.universe_ = bit_buffer::read_u64_le(data, size, pos);
        if (ef.n_ == 0 || ef.universe_ == 0) throw malformed_stream("elias_fano: bad header");
        ef.low_bits_ = ceil_log2_ratio(ef.universe_, ef.n_);
        ef.low_ = bit_buffer::deserialize(data, size, pos);
        ef.high_ = bit_vector_rs::deserialize(data, size, pos);
        if (ef.low_.size_bits() != ef.n_ * ef.low_bits_)
            throw malformed_stream("elias_fano: low bits size mismatch");
        return ef;
    }

    uint64_t low_field(uint64_t idx) const {  // 0-based
        return low_.get_bits(idx * low_bits_, low_bits_);
    }

  private:
    uint64_t n_ = 0;
    uint64_t universe_ = 0;
    unsigned low_bits_ = 0;
    bit_buffer low_;
    bit_vector_rs high_;
};

// Forward iteration over an elias_fano sequence, walking H once.
class ef_cursor {
  public:
    explicit ef_cursor(const elias_fano& ef) : ef_(&ef) {
        hpos_ = 0;
        bucket_ = 0;
        skip_zeros();
    }

    bool valid() const { return idx_ < ef_->size(); }
    uint64_t size() const { return ef_->size(); }

    uint64_t value() const { return (bucket_ << ef_->low_bits()) | ef_->low_field(idx_); }

    void next() {
        ++idx_;
        ++hpos_;
        if (valid()) skip_zeros();
    }

    // forward-only; x below the current value returns the current value
    uint64_t nextgeq(uint64_t x) {
        if (!valid()) return exhausted;
        if (value() >= x) return value();
        const auto [i, v] = ef_->nextgeq_index(x);
        if (v == exhausted) {
            idx_ = ef_->size();
            return exhausted;
        }
        idx_ = i - 1;
        hpos_ = ef_->high().select1(i) - 1;
        bucket_ = hpos_ - idx_;
        return v;
    }

  private:
    void skip_zeros() {
        while (!ef_->high()[hpos_]) {
            ++bucket_;
            ++hpos_;
        }
    }

    const elias_fano* ef_;
    uint64_t idx_ = 0;
    uint64_t hpos_ = 0;
    uint64_t bucket_ = 0;
};

}  // namespace intseq
