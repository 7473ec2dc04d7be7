#pragma once
// blockcodecs.hpp - the gap transform, block primitives (binary packing,
// Simple9/16/8b, PFor and Opt-PFor) and blocked_list: a posting list cut into
// fixed-length blocks with per-block skip metadata for decode and nextgeq.

#include <optional>
#include <span>

#include "interpolative.hpp"

namespace intseq {

/* gap transform: gaps[0] = S[0] + 1 so that docID 0 stays encodable, then
   first differences; all gaps >= 1 and the prefix sum minus one restores S */
inline std::vector<uint64_t> to_gaps(std::span<const uint32_t> s) {
    std::vector<uint64_t> gaps;
    gaps.reserve(s.size());
    uint64_t prev = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        const uint64_t shifted = uint64_t(s[i]) + 1;
        if (shifted <= prev) throw contract_violation("to_gaps: input not strictly increasing");
        gaps.push_back(shifted - prev);
        prev = shifted;
    }
    return gaps;
}

inline std::vector<uint32_t> from_gaps(std::span<const uint64_t> gaps) {
    std::vector<uint32_t> s;
    s.reserve(gaps.size());
    uint64_t acc = 0;
    for (uint64_t g : gaps) {
        if (g == 0) throw contract_violation("from_gaps: gaps must be >= 1");
        acc += g;
        s.push_back(static_cast<uint32_t>(acc - 1));
    }
    return s;
}

/* binary packing: the block is stored with b = ceil(log2(max+1)) bits per
   value after a 6-bit width header; an all-zero block is header only */
inline void for_pack(bit_buffer& out, std::span<const uint64_t> values) {
    if (values.empty()) throw contract_violation("for_pack: empty block");
    uint64_t max = 0;
    for (uint64_t v : values) max = std::max(max, v);
    const unsigned b = bit_width_u64(max);
    if (b > 63) throw value_overflow("for_pack: width header holds at most 63 bits");
    out.append_bits(b, 6);
    for (uint64_t v : values) out.append_bits(v, b);
}

inline void for_unpack(bit_reader& in, size_t n, std::vector<uint64_t>& out) {
    const unsigned b = static_cast<unsigned>(in.read_bits(6));
    for (size_t i = 0; i < n; ++i) out.push_back(in.read_bits(b));
}

/* Simple family: pack as many values as possible into a fixed-size word, a
   4-bit selector naming the packing configuration */
struct simple_segment {
    uint8_t count, width;
};

struct simple_config {
    uint8_t nseg;
    simple_segment seg[3];

    constexpr unsigned capacity() const {
        unsigned c = 0;
        for (uint8_t i = 0; i < nseg; ++i) c += seg[i].count;
        return c;
    }
    constexpr unsigned bits_used() const {
        unsigned b = 0;
        for (uint8_t i = 0; i < nseg; ++i) b += unsigned(seg[i].count) * seg[i].width;
        return b;
    }
};

struct simple9_traits {
    using word_type = uint32_t;
    static constexpr unsigned payload_bits = 28;
    static constexpr simple_config table[] = {
        {1, {{28, 1}}}, {1, {{14, 2}}}, {1, {{9, 3}}},  {1, {{7, 4}}}, {1, {{5, 5}}},
        {1, {{4, 7}}},  {1, {{3, 9}}},  {1, {{2, 14}}}, {1, {{1, 28}}},
    };
};

struct simple16_traits {
    using word_type = uint32_t;
    static constexpr unsigned payload_bits = 28;
    static constexpr simple_config table[] = {
        {1, {{28, 1}}},
        {2, {{7, 2}, {14, 1}}},
        {3, {{7, 1}, {7, 2}, {7, 1}}},
        {2, {{14, 1}, {7, 2}}},
        {1, {{14, 2}}},
        {2, {{1, 4}, {8, 3}}},
        {3, {{1, 3}, {4, 4}, {3, 3}}},
        {1, {{7, 4}}},
        {2, {{4, 5}, {2, 4}}},
        {2, {{2, 4}, {4, 5}}},
        {2, {{3, 6}, {2, 5}}},
        {2, {{2, 5}, {3, 6}}},
        {1, {{4, 7}}},
        {2, {{1, 10}, {2, 9}}},
        {1, {{2, 14}}},
        {1, {{1, 28}}},
    };
};

struct simple8b_traits {
    using word_type = uint64_t;
    static constexpr unsigned payload_bits = 60;
    static constexpr simple_config table[] = {
        {1, {{60, 1}}}, {1, {{30, 2}}}, {1, {{20, 3}}}, {1, {{15, 4}}}, {1, {{12, 5}}},
        {1, {{10, 6}}}, {1, {{8, 7}}},  {1, {{7, 8}}},  {1, {{6, 10}}}, {1, {{5, 12}}},
        {1, {{4, 15}}}, {1, {{3, 20}}}, {1, {{2, 30}}}, {1, {{1, 60}}},
    };
};

template <typename Traits>
struct simple_packer {
    using word_type = typename Traits::word_type;
    static constexpr unsigned payload_bits = Traits::payload_bits;
    static constexpr size_t nconfigs = std::size(Traits::table);

    // greedy: the densest configuration whose slots hold the next values wins;
    // a short tail is packed with implicit zero padding
    static void pack(std::span<const uint64_t> values, std::vector<word_type>& out) {
        size_t i = 0;
        while (i < values.size()) {
            bool emitted = false;
            for (size_t sel = 0; sel < nconfigs; ++sel) {
                const simple_config& cfg = Traits::table[sel];
                const size_t take = std::min<size_t>(cfg.capacity(), values.size() - i);
                if (fits(cfg, values.subspan(i, take))) {
                    out.push_back(make_word(sel, cfg, values.subspan(i, take)));
                    i += take;
                    emitted = true;
                    break;
                }
            }
            if (!emitted)
                throw value_overflow("simple: value wider than the widest configuration");
        }
    }

    static void unpack(std::span<const word_type> words, size_t n, std::vector<uint64_t>& out) {
        for (const word_type w : words) {
            if (out.size() >= n) break;
            const size_t sel = static_cast<size_t>(w >> payload_bits);
            if (sel >= nconfigs) throw malformed_stream("simple: unknown selector");
            const simple_config& cfg = Traits::table[sel];
            unsigned pos = payload_bits;
            for (uint8_t s = 0; s < cfg.nseg; ++s)
                for (unsigned j = 0; j < cfg.seg[s].count; ++j) {
                    pos -= cfg.seg[s].width;
                    if (out.size() < n)
                        out.push_back((w >> pos) & mask(cfg.seg[s].width));
                }
        }
    }

    static uint64_t mask(unsigned width) {
        return width >= 64 ? ~uint64_t(0) : (uint64_t(1) << width) - 1;
    }

    static bool fits(const simple_config& cfg, std::span<const uint64_t> values) {
        size_t i = 0;
        for (uint8_t s = 0; s < cfg.nseg && i < values.size(); ++s)
            for (unsigned j = 0; j < cfg.seg[s].count && i < values.size(); ++j)
                if (values[i++] > mask(cfg.seg[s].width)) return false;
        return true;
    }

    static word_type make_word(size_t sel, const simple_config& cfg,
                               std::span<const uint64_t> values) {
        word_type w = static_cast<word_type>(sel) << payload_bits;
        unsigned pos = payload_bits;
        size_t i = 0;
        for (uint8_t s = 0; s < cfg.nseg; ++s)
            for (unsigned j = 0; j < cfg.seg[s].count; ++j) {
                pos -= cfg.seg[s].width;
                if (i < values.size()) w |= static_cast<word_type>(values[i++]) << pos;
            }
        return w;
    }
};

using simple9 = simple_packer<simple9_traits>;
using simple16 = simple_packer<simple16_traits>;
using simple8b = simple_packer<simple8b_traits>;

/* PFor: values in [b, b + m) with m = max(1, 2^k - 2) go into k-bit slots as
   x - b; everything else is an exception, marked by the escape slot 2^k - 1
   and carried as a Variable-Byte coded value after the slots. */
inline constexpr uint64_t pfor_inline_range(unsigned k) {
    return std::max<uint64_t>(1, (uint64_t(1) << k) - 2);
}

inline bool pfor_is_exception(uint64_t x, uint64_t b, unsigned k) {
    return x < b || x - b >= pfor_inline_range(k);
}

inline void pfor_encode(bit_buffer& out, std::span<const uint64_t> values, uint64_t b,
                        unsigned k) {
    if (values.empty() || k == 0 || k > 32)
        throw contract_violation("pfor: need a non-empty block and 1 <= k <= 32");
    const uint64_t escape = (uint64_t(1) << k) - 1;
    std::vector<uint64_t> exceptions;
    for (uint64_t x : values)
        if (pfor_is_exception(x, b, k)) exceptions.push_back(x);
    write_gamma(out, b + 1);
    out.append_bits(k, 6);
    write_gamma(out, exceptions.size() + 1);
    for (uint64_t x : values)
        out.append_bits(pfor_is_exception(x, b, k) ? escape : x - b, k);
    for (uint64_t x : exceptions) write_vbyte(out, x);
}

inline void pfor_decode(bit_reader& in, size_t n, std::vector<uint64_t>& out) {
    const uint64_t b = read_gamma(in) - 1;
    const unsigned k = static_cast<unsigned>(in.read_bits(6));
    if (k == 0 || k > 32) throw malformed_stream("pfor: bad slot width");
    const uint64_t nexc = read_gamma(in) - 1;
    const uint64_t escape = (uint64_t(1) << k) - 1;
    const size_t start = out.size();
    std::vector<size_t> holes;
    for (size_t i = 0; i < n; ++i) {
        const uint64_t slot = in.read_bits(k);
        if (slot == escape) {
            holes.push_back(start + i);
            out.push_back(0);
        } else {
            out.push_back(b + slot);
        }
    }
    if (holes.size() != nexc) throw malformed_stream("pfor: exception count mismatch");
    for (size_t h : holes) out[h] = read_vbyte(in);
}

// exact encoded size in bits; the measure Opt-PFor minimizes
inline uint64_t pfor_encoded_bits(std::span<const uint64_t> values, uint64_t b, unsigned k) {
    uint64_t bits = gamma_length(b + 1) + 6;
    uint64_t nexc = 0;
    for (uint64_t x : values)
        if (pfor_is_exception(x, b, k)) {
            ++nexc;
            bits += 8ull * vbyte_length(x);
        }
    return bits + gamma_length(nexc + 1) + uint64_t(values.size()) * k;
}

struct pfor_params {
    uint64_t base;
    unsigned k;
};

// Opt-PFor parameter choice: exhaustive over k in 1..32 and base candidates
// {block minimum, 0}, minimizing the exact encoded size; ties prefer the
// smaller k, then the smaller base.
inline pfor_params optpfor_choose(std::span<const uint64_t> values) {
    if (values.empty()) throw contract_violation("optpfor: empty block");
    uint64_t mn = values.front();
    for (uint64_t v : values) mn = std::min(mn, v);
    pfor_params best{0, 0};
    uint64_t best_bits = std::numeric_limits<uint64_t>::max();
    for (unsigned k = 1; k <= 32; ++k) {
        for (uint64_t b : {mn, uint64_t(0)}) {
            const uint64_t bits = pfor_encoded_bits(values, b, k);
            if (bits < best_bits || (bits == best_bits && (k < best.k || (k == best.k && b < best.base)))) {
                best = {b, k};
                best_bits = bits;
            }
            if (mn == 0) break;
        }
    }
    return best;
}

// the 90th-percentile width rule of the original PFor
inline pfor_params pfor_choose(std::span<const uint64_t> values) {
    if (values.empty()) throw contract_violation("pfor: empty block");
    uint64_t mn = values.front();
    for (uint64_t v : values) mn = std::min(mn, v);
    std::vector<uint64_t> shifted;
    shifted.reserve(values.size());
    for (uint64_t v : values) shifted.push_back(v - mn);
    std::sort(shifted.begin(), shifted.end());
    const uint64_t q = shifted[(values.size() * 9) / 10];
    unsigned k = 1;
    while (k < 32 && q >= pfor_inline_range(k)) ++k;
    return {mn, k};
}

/* blocked lists */
enum class block_codec : uint8_t {
    gamma,
    delta,
    rice,
    golomb,
    zeta,
    fibonacci,
    scdense,
    vbyte,
    simple9,
    simple16,
    simple8b,
    pfor,
    optpfor,
    bic,
};

// A compressed strictly increasing list: fixed-length blocks (last one may be
// short), a skip entry per block with its last docID and payload bit offset.
// All codecs but bic store the block's gaps; bic codes docIDs directly.
class blocked_list {
  public:
    static constexpr uint32_t default_block_len = 128;

    struct skip_entry {
        uint32_t last;
        uint64_t bit_offset;
    };

    blocked_list() = default;

    blocked_list(std::span<const uint32_t> s, block_codec codec,
                 uint32_t block_len = default_block_len,
                 bic_mode mode = bic_mode::leftmost_minimal)
        : n_(static_cast<uint32_t>(s.size())), block_len_(block_len), codec_(codec), mode_(mode) {
        if (s.empty()) throw contract_violation("blocked_list: empty list");
        if (block_len_ == 0) throw contract_violation("blocked_list: zero block length");
        const uint32_t nblocks = static_cast<uint32_t>(ceil_div(n_, block_len_));
        skips_.reserve(nblocks);
        std::optional<uint32_t> prev_last;
        for (uint32_t b = 0; b < nblocks; ++b) {
            const size_t begin = size_t(b) * block_len_;
            const size_t len = std::min<size_t>(block_len_, s.size() - begin);
            const auto block = s.subspan(begin, len);
            skips_.push_back({block.back(), payload_.size_bits()});
            encode_block(block, prev_last);
            prev_last = block.back();
        }
    }

    uint32_t size() const { return n_; }
    uint32_t num_blocks() const { return static_cast<uint32_t>(skips_.size()); }
    uint32_t block_length() const { return block_len_; }
    block_codec codec() const { return codec_; }
    const std::vector<skip_entry>& skips() const { return skips_; }
    uint64_t payload_bits() const { return payload_.size_bits(); }

    std::vector<uint32_t> decode() const {
        std::vector<uint32_t> out;
        out.reserve(n_);
        for (uint32_t b = 0; b < num_blocks(); ++b) decode_block(b, out);
        return out;
    }

    // number of elements in block b
    uint32_t block_size(uint32_t b) const {
        const uint64_t begin = uint64_t(b) * block_len_;
        return static_cast<uint32_t>(std::min<uint64_t>(block_len_, n_ - begin));
    }

    // appends block b's docIDs to out
    void decode_block(uint32_t b, std::vector<uint32_t>& out) const {
        const uint32_t len = block_size(b);
        const std::optional<uint32_t> prev =
            b == 0 ? std::nullopt : std::optional<uint32_t>(skips_[b - 1].last);
        bit_reader in(payload_, skips_[b].bit_offset);
        const uint64_t base = prev ? uint64_t(*prev) + 1 : 0;  // gaps accumulate from here
        switch (codec_) {
            case block_codec::bic: {
                const size_t at = out.size();
                out.resize(at + len);
                const uint64_t last = base + read_delta(in) - 1;
                if (len > 1)
                    bic_decode(in, len - 1, base, last - 1, mode_,
                               {out.data() + at, size_t(len) - 1});
                out[at + len - 1] = static_cast<uint32_t>(last);
                return;
            }
            default: break;
        }
        std::vector<uint64_t> gaps;
        gaps.reserve(len);
        decode_block_gaps(in, len, gaps);
        uint64_t acc = base;
        for (uint64_t g : gaps) {
            acc += g;
            out.push_back(static_cast<uint32_t>(acc - 1));
        }
    }

    // smallest element >= x, or exhausted
    uint64_t nextgeq(uint32_t x) const {
        const auto it = std::lower_bound(skips_.begin(), skips_.end(), x,
                                         [](const skip_entry& e, uint32_t v) { return e.last < v; });
        if (it == skips_.end()) return exhausted;
        const uint32_t b = static_cast<uint32_t>(it - skips_.begin());
        std::vector<uint32_t> buf;
        decode_block(b, buf);
        for (uint32_t v : buf)
            if (v >= x) return v;
        return exhausted;  // unreachable: the block's last is >= x
    }

    // Wire format: [u32 n][u32 block count][per block: u32 last, u64 offset][payload].
    void serialize(std::vector<uint8_t>& out) const {
        append_u32(out, n_);
        append_u32(out, num_blocks());
        for (const skip_entry& e : skips_) {
            append_u32(out, e.last);
            bit_buffer::append_u64_le(out, e.bit_offset);
        }
        payload_.serialize(out);
    }

    static blocked_list deserialize(const uint8_t* data, size_t size, size_t& pos,
                                    block_codec codec, uint32_t block_len = default_block_len,
                                    bic_mode mode = bic_mode::leftmost_minimal) {
        blocked_list l;
        l.codec_ = codec;
        l.block_len_ = block_len;
        l.mode_ = mode;
        l.n_ = read_u32(data, size, pos);
        const uint32_t nblocks = read_u32(data, size, pos);
        if (nblocks != ceil_div(l.n_, l.block_len_))
            throw malformed_stream("blocked_list: block count does not match n");
        l.skips_.resize(nblocks);
        for (skip_entry& e : l.skips_) {
            e.last = read_u32(data, size, pos);
            e.bit_offset = bit_buffer::read_u64_le(data, size, pos);
        }
        l.payload_ = bit_buffer::deserialize(data, size, pos);
        return l;
    }

    static void append_u32(std::vector<uint8_t>& out, uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    static uint32_t read_u32(const uint8_t* data, size_t size, size_t& pos) {
        if (pos + 4 > size) throw malformed_stream("blocked_list: truncated header");
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }

  private:
    void encode_block(std::span<const uint32_t> block, std::optional<uint32_t> prev_last) {
        if (codec_ == block_codec::bic) {
            // the block's last docID leads, so the payload alone decodes;
            // the remaining elements recurse over the tightened bounds
            const uint64_t lo = prev_last ? uint64_t(*prev_last) + 1 : 0;
            write_delta(payload_, uint64_t(block.back()) + 1 - lo);
            if (block.size() > 1)
                bic_encode(block.subspan(0, block.size() - 1), lo, uint64_t(block.back()) - 1,
                           mode_, payload_);
            return;
        }
        std::vector<uint64_t> gaps;
        gaps.reserve(block.size());
        uint64_t prev = prev_last ? uint64_t(*prev_last) + 1 : 0;
        for (uint32_t v : block) {
            const uint64_t shifted = uint64_t(v) + 1;
            if (shifted <= prev) throw contract_violation("blocked_list: input not strictly increasing");
            gaps.push_back(shifted - prev);
            prev = shifted;
        }
        encode_block_gaps(gaps);
    }

    void encode_block_gaps(std::span<const uint64_t> gaps) {
        switch (codec_) {
            case block_codec::gamma:
                for (uint64_t g : gaps) write_gamma(payload_, g);
                break;
            case block_codec::delta:
                for (uint64_t g : gaps) write_delta(payload_, g);
                break;
            case block_codec::rice: {
                unsigned best_k = 1;
                uint64_t best_bits = std::numeric_limits<uint64_t>::max();
                for (unsigned k = 1; k <= 4; ++k) {
                    uint64_t bits = 0;
                    for (uint64_t g : gaps) bits += rice_length(g, k, rice_quotient::gamma);
                    if (bits < best_bits) {
                        best_bits = bits;
                        best_k = k;
                    }
                }
                payload_.append_bits(best_k - 1, 2);
                for (uint64_t g : gaps) write_rice(payload_, g, best_k, rice_quotient::gamma);
                break;
            }
            case block_codec::golomb: {
                const uint64_t span = gaps.empty() ? 1 : [&] {
                    uint64_t t = 0;
                    for (uint64_t g : gaps) t += g;
                    return t;
                }();
                const double p = std::min(0.99, double(gaps.size()) / double(std::max<uint64_t>(span, gaps.size())));
                const uint64_t b = std::max<uint64_t>(1, golomb_optimal_b(std::max(p, 1e-9)));
                write_gamma(payload_, b);
                for (uint64_t g : gaps) write_golomb(payload_, g, b);
                break;
            }
            case block_codec::zeta: {
                unsigned best_k = 1;
                uint64_t best_bits = std::numeric_limits<uint64_t>::max();
                for (unsigned k = 1; k <= 7; ++k) {
                    uint64_t bits = 0;
                    for (uint64_t g : gaps) bits += zeta_length(g, k);
                    if (bits < best_bits) {
                        best_bits = bits;
                        best_k = k;
                    }
                }
                payload_.append_bits(best_k - 1, 3);
                for (uint64_t g : gaps) write_zeta(payload_, g, best_k);
                break;
            }
            case block_codec::fibonacci:
                for (uint64_t g : gaps) write_fibonacci(payload_, g);
                break;
            case block_codec::scdense: {
                static const sc_params byte_params(128, 128);
                for (uint64_t g : gaps) write_scdense(payload_, g, byte_params);
                break;
            }
            case block_codec::vbyte:
                for (uint64_t g : gaps) write_vbyte(payload_, g);
                break;
            case block_codec::simple9: encode_simple<simple9>(gaps); break;
            case block_codec::simple16: encode_simple<simple16>(gaps); break;
            case block_codec::simple8b: {
                std::vector<uint64_t> minus1(gaps.begin(), gaps.end());
                for (uint64_t& g : minus1) --g;
                std::vector<uint64_t> words;
                simple8b::pack(minus1, words);
                for (uint64_t w : words) payload_.append_bits(w, 64);
                break;
            }
            case block_codec::pfor: {
                const pfor_params p = pfor_choose(gaps);
                pfor_encode(payload_, gaps, p.base, p.k);
                break;
            }
            case block_codec::optpfor: {
                const pfor_params p = optpfor_choose(gaps);
                pfor_encode(payload_, gaps, p.base, p.k);
                break;
            }
            case block_codec::bic: break;  // handled in encode_block
        }
    }

    // 32-bit packed words preceded by a word count; gaps wider than a 28-bit
    // slot force the binary-packed fallback, flagged by one bit
    template <typename Packer>
    void encode_simple(std::span<const uint64_t> gaps) {
        std::vector<uint64_t> minus1(gaps.begin(), gaps.end());
        for (uint64_t& g : minus1) --g;
        try {
            std::vector<uint32_t> words;
            Packer::pack(minus1, words);
            payload_.append_bits(0, 1);
            for (uint32_t w : words) payload_.append_bits(w, 32);
        } catch (const value_overflow&) {
            payload_.append_bits(1, 1);
            for_pack(payload_, minus1);
        }
    }

    // words are read lazily until n values are out; no word count is stored
    template <typename Packer, typename Word>
    void decode_simple(bit_reader& in, size_t n, std::vector<uint64_t>& gaps) const {
        while (gaps.size() < n) {
            const Word w[1] = {static_cast<Word>(in.read_bits(sizeof(Word) * 8))};
            Packer::unpack(w, n, gaps);
        }
        for (uint64_t& g : gaps) ++g;
    }

    void decode_block_gaps(bit_reader& in, size_t n, std::vector<uint64_t>& gaps) const {
        switch (codec_) {
            case block_codec::gamma:
                for (size_t i = 0; i < n; ++i) gaps.push_back(read_gamma(in));
                break;
            case block_codec::delta:
                for (size_t i = 0; i < n; ++i) gaps.push_back(read_delta(in));
                break;
            case block_codec::rice: {
                const unsigned k = static_cast<unsigned>(in.read_bits(2)) + 1;
                for (size_t i = 0; i < n; ++i)
                    gaps.push_back(read_rice(in, k, rice_quotient::gamma));
                break;
            }
            case block_codec::golomb: {
                const uint64_t b = read_gamma(in);
                for (size_t i = 0; i < n; ++i) gaps.push_back(read_golomb(in, b));
                break;
            }
            case block_codec::zeta: {
                const unsigned k = static_cast<unsigned>(in.read_bits(3)) + 1;
                for (size_t i = 0; i < n; ++i) gaps.push_back(read_zeta(in, k));
                break;
            }
            case block_codec::fibonacci:
                for (size_t i = 0; i < n; ++i) gaps.push_back(read_fibonacci(in));
                break;
            case block_codec::scdense: {
                static const sc_params byte_params(128, 128);
                for (size_t i = 0; i < n; ++i) gaps.push_back(read_scdense(in, byte_params));
                break;
            }
            case block_codec::vbyte:
                for (size_t i = 0; i < n; ++i) gaps.push_back(read_vbyte(in) );
                break;
            case block_codec::simple9:
            case block_codec::simple16: {
                if (in.read_bits(1) != 0) {
                    for_unpack(in, n, gaps);
                    for (uint64_t& g : gaps) ++g;
                } else if (codec_ == block_codec::simple9) {
                    decode_simple<simple9, uint32_t>(in, n, gaps);
                } else {
                    decode_simple<simple16, uint32_t>(in, n, gaps);
                }
                break;
            }
            case block_codec::simple8b: decode_simple<simple8b, uint64_t>(in, n, gaps); break;
            case block_codec::pfor:
            case block_codec::optpfor: pfor_decode(in, n, gaps); break;
            case block_codec::bic: break;  // never reached
        }
    }

    uint32_t n_ = 0;
    uint32_t block_len_ = default_block_len;
    block_codec codec_ = block_codec::gamma;
    bic_mode mode_ = bic_mode::leftmost_minimal;
    std::vector<skip_entry> skips_;
    bit_buffer payload_;
};

// Forward-only reading cursor over a blocked_list, caching one decoded block.
class blocked_cursor {
  public:
    explicit blocked_cursor(const blocked_list& list) : list_(&list) { load_block(0); }

    uint32_t size() const { return list_->size(); }
    bool valid() const { return block_ < list_->num_blocks(); }
    uint32_t value() const { return buf_[idx_]; }

    void next() {
        if (++idx_ >= buf_.size()) load_block(block_ + 1);
    }

    // smallest element >= x at or after the current position
    uint64_t nextgeq(uint32_t x) {
        if (!valid()) return exhausted;
        if (list_->skips()[block_].last < x) {
            const auto& skips = list_->skips();
            const auto it = std::lower_bound(
                skips.begin() + block_ + 1, skips.end(), x,
                [](const blocked_list::skip_entry& e, uint32_t v) { return e.last < v; });
            if (it == skips.end()) {
                block_ = list_->num_blocks();
                return exhausted;
            }
            load_block(static_cast<uint32_t>(it - skips.begin()));
        }
        while (idx_ < buf_.size() && buf_[idx_] < x) ++idx_;
        assert(idx_ < buf_.size());
        return buf_[idx_];
    }

  private:
    void load_block(uint32_t b) {
        block_ = b;
        idx_ = 0;
        buf_.clear();
        if (b < list_->num_blocks()) list_->decode_block(b, buf_);
    }

    const blocked_list* list_;
    uint32_t block_ = 0;
    size_t idx_ = 0;
    std::vector<uint32_t> buf_;
};

}  // namespace intseq
