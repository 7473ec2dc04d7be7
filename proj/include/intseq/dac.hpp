#pragma once
// dac.hpp - directly-addressable codes: integers are cut into b-bit chunks,
// level k holding the k-th chunk of every value wide enough to need one, with
// a control bitmap whose rank steers random access to the next level.

#include <span>

#include "bitvector_rs.hpp"

namespace intseq {

class dac_vector {
  public:
    dac_vector() = default;

    dac_vector(std::span<const uint64_t> values, unsigned b) : b_(b), n_(values.size()) {
        if (b == 0 || b > 32) throw contract_violation("dac: need 1 <= b <= 32");
        std::vector<uint64_t> cur(values.begin(), values.end());
        while (!cur.empty()) {
            bit_buffer chunks, ctrl;
            std::vector<uint64_t> next;
            for (uint64_t v : cur) {
                chunks.append_bits(v & ((uint64_t(1) << b) - 1), b);
                const uint64_t rest = v >> b;
                ctrl.append_bits(rest != 0 ? 1 : 0, 1);
                if (rest != 0) next.push_back(rest);
            }
            levels_.push_back({std::move(chunks), bit_vector_rs(std::move(ctrl))});
            cur = std::move(next);
        }
        if (levels_.empty()) levels_.push_back({bit_buffer(), bit_vector_rs(bit_buffer())});
    }

    uint64_t size() const { return n_; }
    unsigned chunk_bits() const { return b_; }
    size_t num_levels() const { return levels_.size(); }
    const bit_vector_rs& control(size_t level) const { return levels_[level].ctrl; }
    uint64_t level_size(size_t level) const { return levels_[level].ctrl.size(); }

    // i is 1-based
    uint64_t access(uint64_t i) const {
        if (i == 0 || i > n_) throw contract_violation("dac: index out of range");
        uint64_t value = 0;
        uint64_t idx = i;
        for (size_t k = 0;; ++k) {
            const level& lv = levels_[k];
            value |= lv.chunks.get_bits((idx - 1) * b_, b_) << (k * b_);
            if (!lv.ctrl[idx - 1]) return value;
            idx = lv.ctrl.rank1(idx);  // position among the survivors
        }
    }

    std::vector<uint64_t> decode() const {
        std::vector<uint64_t> out;
        out.reserve(n_);
        for (uint64_t i = 1; i <= n_; ++i) out.push_back(access(i));
        return out;
    }

    // total payload: chunk streams plus control bitmaps, excluding rank samples
    uint64_t payload_bits() const {
        uint64_t bits = 0;
        for (const level& lv : levels_) bits += lv.chunks.size_bits() + lv.ctrl.size();
        return bits;
    }

    void serialize(std::vector<uint8_t>& out) const {
        blocked_append_u32(out, n_);
        out.push_back(static_cast<uint8_t>(b_));
        out.push_back(static_cast<uint8_t>(levels_.size()));
        for (const level& lv : levels_) {
            lv.chunks.serialize(out);
            lv.ctrl.serialize(out);
        }
    }

    static dac_vector deserialize(const uint8_t* data, size_t size, size_t& pos) {
        dac_vector v;
        v.n_ = blocked_read_u32(data, size, pos);
        if (pos + 2 > size) throw malformed_stream("dac: truncated header");
        v.b_ = data[pos++];
        const uint8_t nlevels = data[pos++];
        if (v.b_ == 0 || v.b_ > 32 || nlevels == 0) throw malformed_stream("dac: bad header");
        for (uint8_t k = 0; k < nlevels; ++k) {
            bit_buffer chunks = bit_buffer::deserialize(data, size, pos);
            bit_vector_rs ctrl = bit_vector_rs::deserialize(data, size, pos);
            if (chunks.size_bits() != ctrl.size() * v.b_)
                throw malformed_stream("dac: level size mismatch");
            v.levels_.push_back({std::move(chunks), std::move(ctrl)});
        }
        return v;
    }

  private:
    struct level {
        bit_buffer chunks;
        bit_vector_rs ctrl;
    };

    static void blocked_append_u32(std::vector<uint8_t>& out, uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    static uint32_t blocked_read_u32(const uint8_t* data, size_t size, size_t& pos) {
        if (pos + 4 > size) throw malformed_stream("dac: truncated header");
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }

    unsigned b_ = 1;
    uint32_t n_ = 0;
    std::vector<level> levels_;
};

}  // namespace intseq
