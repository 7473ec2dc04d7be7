#pragma once
// universepart.hpp - universe-partitioned set representations. Roaring splits
// the universe into 2^16-value chunks held as sorted arrays, bitmaps or run
// lists; Slicing recursively splits sparse 2^16 slices into 2^8 sub-blocks.
// Both support native intersection/union that never walks single integers
// through a NextGEQ loop.

#include <array>
#include <span>
#include <variant>

#include "bitbuffer.hpp"

namespace intseq {

namespace upart {

using words1024 = std::vector<uint64_t>;  // 2^16 bits

inline void set_word_bit(words1024& w, uint16_t v) { w[v >> 6] |= uint64_t(1) << (v & 63); }
inline bool get_word_bit(const words1024& w, uint16_t v) {
    return (w[v >> 6] >> (v & 63)) & 1;
}

// appends all set bits of w, offset by base
inline void emit_bits(const words1024& w, uint32_t base, std::vector<uint32_t>& out) {
    for (size_t i = 0; i < w.size(); ++i) {
        uint64_t word = w[i];
        while (word) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(word));
            out.push_back(base + static_cast<uint32_t>(i * 64 + bit));
            word &= word - 1;
        }
    }
}

// run list over 16-bit locals: (start, len) covers start..start+len inclusive
using run_list = std::vector<std::pair<uint16_t, uint16_t>>;

inline run_list runs_of(std::span<const uint16_t> values) {
    run_list runs;
    size_t i = 0;
    while (i < values.size()) {
        size_t j = i;
        while (j + 1 < values.size() && values[j + 1] == values[j] + 1) ++j;
        runs.emplace_back(values[i], static_cast<uint16_t>(j - i));
        i = j + 1;
    }
    return runs;
}

}  // namespace upart

class roaring_set {
  public:
    enum class container_kind : uint8_t { array = 0, bitmap = 1, runs = 2 };

    roaring_set() = default;

    explicit roaring_set(std::span<const uint32_t> s) {
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] <= s[i - 1]) throw contract_violation("roaring: input not strictly increasing");
        size_t i = 0;
        while (i < s.size()) {
            const uint16_t key = static_cast<uint16_t>(s[i] >> 16);
            std::vector<uint16_t> locals;
            while (i < s.size() && (s[i] >> 16) == key)
                locals.push_back(static_cast<uint16_t>(s[i++] & 0xffff));
            chunks_.push_back({key, make_container(locals)});
            n_ += locals.size();
        }
    }

    uint64_t size() const { return n_; }
    size_t num_chunks() const { return chunks_.size(); }
    uint16_t chunk_key(size_t c) const { return chunks_[c].key; }
    container_kind chunk_kind(size_t c) const {
        return static_cast<container_kind>(chunks_[c].payload.index());
    }

    // serialized bytes under the wire format below
    uint64_t serialized_bytes() const {
        uint64_t bytes = 4;
        for (const chunk& c : chunks_) bytes += 7 + container_bytes(c.payload);
        return bytes;
    }

    std::vector<uint32_t> decode() const {
        std::vector<uint32_t> out;
        out.reserve(n_);
        for (const chunk& c : chunks_) emit(c, out);
        return out;
    }

    bool contains(uint32_t x) const {
        const chunk* c = find_chunk(static_cast<uint16_t>(x >> 16));
        if (!c) return false;
        const uint16_t v = static_cast<uint16_t>(x & 0xffff);
        return std::visit(
            [&](const auto& payload) { return payload_contains(payload, v); }, c->payload);
    }

    uint64_t nextgeq(uint32_t x) const {
        const uint16_t key = static_cast<uint16_t>(x >> 16);
        auto it = std::lower_bound(chunks_.begin(), chunks_.end(), key,
                                   [](const chunk& c, uint16_t k) { return c.key < k; });
        for (; it != chunks_.end(); ++it) {
            const uint16_t lo = it->key == key ? static_cast<uint16_t>(x & 0xffff) : 0;
            const int32_t local = std::visit(
                [&](const auto& payload) { return payload_nextgeq(payload, lo); }, it->payload);
            if (local >= 0) return (uint32_t(it->key) << 16) | uint32_t(local);
        }
        return exhausted;
    }

    friend std::vector<uint32_t> set_intersect(const roaring_set& a, const roaring_set& b) {
        std::vector<uint32_t> out;
        size_t i = 0, j = 0;
        while (i < a.chunks_.size() && j < b.chunks_.size()) {
            const chunk& ca = a.chunks_[i];
            const chunk& cb = b.chunks_[j];
            if (ca.key < cb.key) ++i;
            else if (cb.key < ca.key) ++j;
            else {
                intersect_containers(ca.payload, cb.payload, uint32_t(ca.key) << 16, out);
                ++i, ++j;
            }
        }
        return out;
    }

    friend std::vector<uint32_t> set_union(const roaring_set& a, const roaring_set& b) {
        std::vector<uint32_t> out;
        size_t i = 0, j = 0;
        while (i < a.chunks_.size() || j < b.chunks_.size()) {
            const bool take_a = j >= b.chunks_.size() ||
                                (i < a.chunks_.size() && a.chunks_[i].key < b.chunks_[j].key);
            const bool take_b = i >= a.chunks_.size() ||
                                (j < b.chunks_.size() && b.chunks_[j].key < a.chunks_[i].key);
            if (take_a) emit(a.chunks_[i++], out);
            else if (take_b) emit(b.chunks_[j++], out);
            else {
                union_containers(a.chunks_[i].payload, b.chunks_[j].payload,
                                 uint32_t(a.chunks_[i].key) << 16, out);
                ++i, ++j;
            }
        }
        return out;
    }

    // Wire format: [u32 chunk count] then per chunk
    // [u16 key][u8 kind][u32 cardinality][payload], all little-endian.
    void serialize(std::vector<uint8_t>& out) const {
        append_u32(out, static_cast<uint32_t>(chunks_.size()));
        for (const chunk& c : chunks_) {
            out.push_back(static_cast<uint8_t>(c.key & 0xff));
            out.push_back(static_cast<uint8_t>(c.key >> 8));
            out.push_back(static_cast<uint8_t>(c.payload.index()));
            append_u32(out, static_cast<uint32_t>(cardinality(c.payload)));
            std::visit([&](const auto& payload) { serialize_payload(payload, out); }, c.payload);
        }
    }

    static roaring_set deserialize(const uint8_t* data, size_t size, size_t& pos) {
        roaring_set r;
        const uint32_t nchunks = read_u32(data, size, pos);
        for (uint32_t c = 0; c < nchunks; ++c) {
            if (pos + 3 > size) throw malformed_stream("roaring: truncated chunk header");
            const uint16_t key = static_cast<uint16_t>(data[pos] | (data[pos + 1] << 8));
            const uint8_t kind = data[pos + 2];
            pos += 3;
            const uint32_t card = read_u32(data, size, pos);
            chunk ch{key, {}};
            switch (kind) {
                case 0: {
                    std::vector<uint16_t> values(card);
                    for (uint16_t& v : values) v = read_u16(data, size, pos);
                    ch.payload = std::move(values);
                    break;
                }
                case 1: {
                    upart::words1024 w(1024);
                    for (uint64_t& word : w) word = bit_buffer::read_u64_le(data, size, pos);
                    ch.payload = std::move(w);
                    break;
                }
                case 2: {
                    const uint32_t nruns = read_u32(data, size, pos);
                    upart::run_list runs(nruns);
                    for (auto& [v, len] : runs) {
                        v = read_u16(data, size, pos);
                        len = read_u16(data, size, pos);
                    }
                    ch.payload = std::move(runs);
                    break;
                }
                default: throw malformed_stream("roaring: unknown container kind");
            }
            r.n_ += cardinality(ch.payload);
            r.chunks_.push_back(std::move(ch));
        }
        return r;
    }

  private:
    using container = std::variant<std::vector<uint16_t>, upart::words1024, upart::run_list>;

    struct chunk {
        uint16_t key;
        container payload;
    };

    static container make_container(std::span<const uint16_t> locals) {
        const upart::run_list runs = upart::runs_of(locals);
        const uint64_t run_bytes = 4 * runs.size();
        if (locals.size() < 4096) {
            if (run_bytes < 2 * locals.size()) return runs;
            return std::vector<uint16_t>(locals.begin(), locals.end());
        }
        if (run_bytes < 8192) return runs;
        upart::words1024 w(1024, 0);
        for (uint16_t v : locals) upart::set_word_bit(w, v);
        return w;
    }

    static uint64_t cardinality(const container& c) {
        if (const auto* arr = std::get_if<std::vector<uint16_t>>(&c)) return arr->size();
        if (const auto* w = std::get_if<upart::words1024>(&c)) {
            uint64_t count = 0;
            for (uint64_t word : *w) count += std::popcount(word);
            return count;
        }
        const auto& runs = std::get<upart::run_list>(c);
        uint64_t count = 0;
        for (auto [v, len] : runs) count += uint64_t(len) + 1;
        return count;
    }

    // serialized payload sizes: 2B per array value, 8KiB bitmap, a u32 run
    // count plus 4B per run
    static uint64_t container_bytes(const container& c) {
        if (const auto* arr = std::get_if<std::vector<uint16_t>>(&c)) return 2 * arr->size();
        if (std::holds_alternative<upart::words1024>(c)) return 8192;
        return 4 + 4 * std::get<upart::run_list>(c).size();
    }

    const chunk* find_chunk(uint16_t key) const {
        const auto it = std::lower_bound(chunks_.begin(), chunks_.end(), key,
                                         [](const chunk& c, uint16_t k) { return c.key < k; });
        return it != chunks_.end() && it->key == key ? &*it : nullptr;
    }

    static void emit(const chunk& c, std::vector<uint32_t>& out) {
        const uint32_t base = uint32_t(c.key) << 16;
        if (const auto* arr = std::get_if<std::vector<uint16_t>>(&c.payload)) {
            for (uint16_t v : *arr) out.push_back(base | v);
        } else if (const auto* w = std::get_if<upart::words1024>(&c.payload)) {
            upart::emit_bits(*w, base, out);
        } else {
            for (auto [v, len] : std::get<upart::run_list>(c.payload))
                for (uint32_t x = v; x <= uint32_t(v) + len; ++x) out.push_back(base | x);
        }
    }

    static bool payload_contains(const std::vector<uint16_t>& arr, uint16_t v) {
        return std::binary_search(arr.begin(), arr.end(), v);
    }
    static bool payload_contains(const upart::words1024& w, uint16_t v) {
        return upart::get_word_bit(w, v);
    }
    static bool payload_contains(const upart::run_list& runs, uint16_t v) {
        auto it = std::upper_bound(runs.begin(), runs.end(), v,
                                   [](uint16_t x, const auto& r) { return x < r.first; });
        if (it == runs.begin()) return false;
        --it;
        return uint32_t(v) <= uint32_t(it->first) + it->second;
    }

    // smallest local value >= lo, or -1
    static int32_t payload_nextgeq(const std::vector<uint16_t>& arr, uint16_t lo) {
        const auto it = std::lower_bound(arr.begin(), arr.end(), lo);
        return it == arr.end() ? -1 : int32_t(*it);
    }
    static int32_t payload_nextgeq(const upart::words1024& w, uint16_t lo) {
        size_t word = lo >> 6;
        uint64_t cur = w[word] >> (lo & 63) << (lo & 63);
        while (true) {
            if (cur) return int32_t(word * 64 + std::countr_zero(cur));
            if (++word == w.size()) return -1;
            cur = w[word];
        }
    }
    static int32_t payload_nextgeq(const upart::run_list& runs, uint16_t lo) {
        auto it = std::upper_bound(runs.begin(), runs.end(), lo,
                                   [](uint16_t x, const auto& r) { return x < r.first; });
        if (it != runs.begin()) {
            const auto& prev = *std::prev(it);
            if (uint32_t(lo) <= uint32_t(prev.first) + prev.second) return int32_t(lo);
        }
        return it == runs.end() ? -1 : int32_t(it->first);
    }

    static void serialize_payload(const std::vector<uint16_t>& arr, std::vector<uint8_t>& out) {
        for (uint16_t v : arr) append_u16(out, v);
    }
    static void serialize_payload(const upart::words1024& w, std::vector<uint8_t>& out) {
        for (uint64_t word : w) bit_buffer::append_u64_le(out, word);
    }
    static void serialize_payload(const upart::run_list& runs, std::vector<uint8_t>& out) {
        append_u32(out, static_cast<uint32_t>(runs.size()));
        for (auto [v, len] : runs) {
            append_u16(out, v);
            append_u16(out, len);
        }
    }

    /* kind-pair intersection */
    static void intersect_containers(const container& a, const container& b, uint32_t base,
                                     std::vector<uint32_t>& out) {
        using arr_t = std::vector<uint16_t>;
        if (const auto* aa = std::get_if<arr_t>(&a)) {
            if (const auto* ba = std::get_if<arr_t>(&b)) return arr_x_arr(*aa, *ba, base, out);
            if (const auto* bw = std::get_if<upart::words1024>(&b))
                return arr_x_bitmap(*aa, *bw, base, out);
            return arr_x_runs(*aa, std::get<upart::run_list>(b), base, out);
        }
        if (const auto* aw = std::get_if<upart::words1024>(&a)) {
            if (const auto* ba = std::get_if<arr_t>(&b)) return arr_x_bitmap(*ba, *aw, base, out);
            if (const auto* bw = std::get_if<upart::words1024>(&b)) {
                upart::words1024 w(1024);
                for (size_t i = 0; i < 1024; ++i) w[i] = (*aw)[i] & (*bw)[i];
                return upart::emit_bits(w, base, out);
            }
            return runs_x_bitmap(std::get<upart::run_list>(b), *aw, base, out);
        }
        const auto& ar = std::get<upart::run_list>(a);
        if (const auto* ba = std::get_if<arr_t>(&b)) return arr_x_runs(*ba, ar, base, out);
        if (const auto* bw = std::get_if<upart::words1024>(&b))
            return runs_x_bitmap(ar, *bw, base, out);
        return runs_x_runs(ar, std::get<upart::run_list>(b), base, out);
    }

    static void arr_x_arr(const std::vector<uint16_t>& a, const std::vector<uint16_t>& b,
                          uint32_t base, std::vector<uint32_t>& out) {
        const auto& small = a.size() <= b.size() ? a : b;
        const auto& large = a.size() <= b.size() ? b : a;
        if (large.size() / std::max<size_t>(1, small.size()) > 32) {
            // galloping: binary search each element of the small side
            for (uint16_t v : small)
                if (std::binary_search(large.begin(), large.end(), v)) out.push_back(base | v);
            return;
        }
        size_t i = 0, j = 0;
        while (i < small.size() && j < large.size()) {
            if (small[i] < large[j]) ++i;
            else if (large[j] < small[i]) ++j;
            else {
                out.push_back(base | small[i]);
                ++i, ++j;
            }
        }
    }

    static void arr_x_bitmap(const std::vector<uint16_t>& a, const upart::words1024& w,
                             uint32_t base, std::vector<uint32_t>& out) {
        for (uint16_t v : a)
            if (upart::get_word_bit(w, v)) out.push_back(base | v);
    }

    static void arr_x_runs(const std::vector<uint16_t>& a, const upart::run_list& runs,
                           uint32_t base, std::vector<uint32_t>& out) {
        size_t r = 0;
        for (uint16_t v : a) {
            while (r < runs.size() && uint32_t(runs[r].first) + runs[r].second < v) ++r;
            if (r == runs.size()) break;
            if (v >= runs[r].first) out.push_back(base | v);
        }
    }

    static void runs_x_bitmap(const upart::run_list& runs, const upart::words1024& w,
                              uint32_t base, std::vector<uint32_t>& out) {
        for (auto [v, len] : runs)
            for (uint32_t x = v; x <= uint32_t(v) + len; ++x)
                if (upart::get_word_bit(w, static_cast<uint16_t>(x)))
                    out.push_back(base | x);
    }

    static void runs_x_runs(const upart::run_list& a, const upart::run_list& b, uint32_t base,
                            std::vector<uint32_t>& out) {
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            const uint32_t alo = a[i].first, ahi = alo + a[i].second;
            const uint32_t blo = b[j].first, bhi = blo + b[j].second;
            const uint32_t lo = std::max(alo, blo), hi = std::min(ahi, bhi);
            for (uint32_t x = lo; x <= hi && lo <= hi; ++x) out.push_back(base | x);
            if (ahi < bhi) ++i;
            else ++j;
        }
    }

    /* kind-pair union: bitmap-backed scratch for the mixed cases */
    static void union_containers(const container& a, const container& b, uint32_t base,
                                 std::vector<uint32_t>& out) {
        using arr_t = std::vector<uint16_t>;
        if (const auto* aa = std::get_if<arr_t>(&a))
            if (const auto* ba = std::get_if<arr_t>(&b)) {
                size_t i = 0, j = 0;
                while (i < aa->size() || j < ba->size()) {
                    if (j >= ba->size() || (i < aa->size() && (*aa)[i] < (*ba)[j]))
                        out.push_back(base | (*aa)[i++]);
                    else if (i >= aa->size() || (*ba)[j] < (*aa)[i])
                        out.push_back(base | (*ba)[j++]);
                    else {
                        out.push_back(base | (*aa)[i]);
                        ++i, ++j;
                    }
                }
                return;
            }
        if (std::holds_alternative<upart::words1024>(a) &&
            std::holds_alternative<upart::words1024>(b)) {
            const auto& aw = std::get<upart::words1024>(a);
            const auto& bw = std::get<upart::words1024>(b);
            upart::words1024 w(1024);
            for (size_t i = 0; i < 1024; ++i) w[i] = aw[i] | bw[i];
            return upart::emit_bits(w, base, out);
        }
        upart::words1024 w(1024, 0);
        mark(a, w);
        mark(b, w);
        upart::emit_bits(w, base, out);
    }

    static void mark(const container& c, upart::words1024& w) {
        if (const auto* arr = std::get_if<std::vector<uint16_t>>(&c)) {
            for (uint16_t v : *arr) upart::set_word_bit(w, v);
        } else if (const auto* bw = std::get_if<upart::words1024>(&c)) {
            for (size_t i = 0; i < 1024; ++i) w[i] |= (*bw)[i];
        } else {
            for (auto [v, len] : std::get<upart::run_list>(c)) {
                // set v..v+len word by word
                uint32_t x = v;
                const uint32_t end = uint32_t(v) + len;
                while (x <= end) {
                    const uint32_t word = x >> 6;
                    const uint32_t from = x & 63;
                    const uint32_t upto = std::min<uint32_t>(63, from + (end - x));
                    const uint64_t mask = (upto == 63 ? ~uint64_t(0) : (uint64_t(1) << (upto + 1)) - 1) &
                                          ~((uint64_t(1) << from) - 1);
                    w[word] |= mask;
                    x = (word + 1) << 6;
                }
            }
        }
    }

    static void append_u16(std::vector<uint8_t>& out, uint16_t v) {
        out.push_back(static_cast<uint8_t>(v & 0xff));
        out.push_back(static_cast<uint8_t>(v >> 8));
    }
    static uint16_t read_u16(const uint8_t* data, size_t size, size_t& pos) {
        if (pos + 2 > size) throw malformed_stream("roaring: truncated payload");
        const uint16_t v = static_cast<uint16_t>(data[pos] | (data[pos + 1] << 8));
        pos += 2;
        return v;
    }
    static void append_u32(std::vector<uint8_t>& out, uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    static uint32_t read_u32(const uint8_t* data, size_t size, size_t& pos) {
        if (pos + 4 > size) throw malformed_stream("roaring: truncated header");
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }

    std::vector<chunk> chunks_;
    uint64_t n_ = 0;
};

class sliced_set {
  public:
    enum class slice_kind : uint8_t { sparse = 0, dense = 1, full = 2 };

    sliced_set() = default;

    explicit sliced_set(std::span<const uint32_t> s) {
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] <= s[i - 1]) throw contract_violation("slicing: input not strictly increasing");
        size_t i = 0;
        while (i < s.size()) {
            const uint16_t key = static_cast<uint16_t>(s[i] >> 16);
            std::vector<uint16_t> locals;
            while (i < s.size() && (s[i] >> 16) == key)
                locals.push_back(static_cast<uint16_t>(s[i++] & 0xffff));
            slices_.push_back({key, make_slice(locals)});
            n_ += locals.size();
        }
    }

    uint64_t size() const { return n_; }
    size_t num_slices() const { return slices_.size(); }
    uint16_t slice_key(size_t i) const { return slices_[i].key; }
    slice_kind kind(size_t i) const { return static_cast<slice_kind>(slices_[i].payload.index()); }

    std::vector<uint32_t> decode() const {
        std::vector<uint32_t> out;
        out.reserve(n_);
        for (const slice& sl : slices_) emit(sl, out);
        return out;
    }

    bool contains(uint32_t x) const {
        const slice* sl = find_slice(static_cast<uint16_t>(x >> 16));
        if (!sl) return false;
        return slice_contains(*sl, static_cast<uint16_t>(x & 0xffff));
    }

    uint64_t nextgeq(uint32_t x) const {
        const uint16_t key = static_cast<uint16_t>(x >> 16);
        auto it = std::lower_bound(slices_.begin(), slices_.end(), key,
                                   [](const slice& sl, uint16_t k) { return sl.key < k; });
        for (; it != slices_.end(); ++it) {
            const uint16_t lo = it->key == key ? static_cast<uint16_t>(x & 0xffff) : 0;
            const int32_t local = slice_nextgeq(*it, lo);
            if (local >= 0) return (uint32_t(it->key) << 16) | uint32_t(local);
        }
        return exhausted;
    }

    friend std::vector<uint32_t> set_intersect(const sliced_set& a, const sliced_set& b) {
        std::vector<uint32_t> out;
        size_t i = 0, j = 0;
        while (i < a.slices_.size() && j < b.slices_.size()) {
            const slice& sa = a.slices_[i];
            const slice& sb = b.slices_[j];
            if (sa.key < sb.key) ++i;
            else if (sb.key < sa.key) ++j;
            else {
                intersect_slices(sa, sb, uint32_t(sa.key) << 16, out);
                ++i, ++j;
            }
        }
        return out;
    }

    friend std::vector<uint32_t> set_union(const sliced_set& a, const sliced_set& b) {
        std::vector<uint32_t> out;
        size_t i = 0, j = 0;
        while (i < a.slices_.size() || j < b.slices_.size()) {
            const bool take_a = j >= b.slices_.size() ||
                                (i < a.slices_.size() && a.slices_[i].key < b.slices_[j].key);
            const bool take_b = i >= a.slices_.size() ||
                                (j < b.slices_.size() && b.slices_[j].key < a.slices_[i].key);
            if (take_a) emit(a.slices_[i++], out);
            else if (take_b) emit(b.slices_[j++], out);
            else {
                union_slices(a.slices_[i], b.slices_[j], uint32_t(a.slices_[i].key) << 16, out);
                ++i, ++j;
            }
        }
        return out;
    }

    // Wire format mirrors the roaring one: [u32 slice count], per slice
    // [u16 key][u8 kind][u32 cardinality][payload]. Sparse payloads are
    // [u16 block count] then per block [u8 high byte][u8 kind][u8 count or 0]
    // followed by the bytes or the 256-bit bitmap.
    void serialize(std::vector<uint8_t>& out) const {
        append_u32s(out, static_cast<uint32_t>(slices_.size()));
        for (const slice& sl : slices_) {
            out.push_back(static_cast<uint8_t>(sl.key & 0xff));
            out.push_back(static_cast<uint8_t>(sl.key >> 8));
            out.push_back(static_cast<uint8_t>(sl.payload.index()));
            append_u32s(out, static_cast<uint32_t>(slice_cardinality(sl)));
            if (const auto* d = std::get_if<dense_slice>(&sl.payload)) {
                for (uint64_t w : d->bits) bit_buffer::append_u64_le(out, w);
            } else if (const auto* sp = std::get_if<sparse_slice>(&sl.payload)) {
                out.push_back(static_cast<uint8_t>(sp->blocks.size() & 0xff));
                out.push_back(static_cast<uint8_t>(sp->blocks.size() >> 8));
                for (const auto& [hi, blk] : sp->blocks) {
                    out.push_back(hi);
                    if (const auto* arr = std::get_if<std::vector<uint8_t>>(&blk)) {
                        out.push_back(0);
                        out.push_back(static_cast<uint8_t>(arr->size()));
                        out.insert(out.end(), arr->begin(), arr->end());
                    } else {
                        out.push_back(1);
                        out.push_back(0);
                        for (uint64_t w : std::get<bmp256>(blk)) bit_buffer::append_u64_le(out, w);
                    }
                }
            }
        }
    }

    static sliced_set deserialize(const uint8_t* data, size_t size, size_t& pos) {
        sliced_set r;
        const uint32_t nslices = read_u32s(data, size, pos);
        for (uint32_t i = 0; i < nslices; ++i) {
            if (pos + 3 > size) throw malformed_stream("slicing: truncated slice header");
            const uint16_t key = static_cast<uint16_t>(data[pos] | (data[pos + 1] << 8));
            const uint8_t kind = data[pos + 2];
            pos += 3;
            (void)read_u32s(data, size, pos);  // cardinality, recomputed below
            slice sl{key, full_slice{}};
            if (kind == 1) {
                dense_slice d{upart::words1024(1024)};
                for (uint64_t& w : d.bits) w = bit_buffer::read_u64_le(data, size, pos);
                sl.payload = std::move(d);
            } else if (kind == 0) {
                if (pos + 2 > size) throw malformed_stream("slicing: truncated sparse header");
                const uint16_t nblocks = static_cast<uint16_t>(data[pos] | (data[pos + 1] << 8));
                pos += 2;
                sparse_slice sp;
                for (uint16_t b = 0; b < nblocks; ++b) {
                    if (pos + 3 > size) throw malformed_stream("slicing: truncated block header");
                    const uint8_t hi = data[pos], bkind = data[pos + 1], count = data[pos + 2];
                    pos += 3;
                    if (bkind == 0) {
                        if (pos + count > size) throw malformed_stream("slicing: truncated block");
                        sp.blocks.emplace_back(hi,
                                               std::vector<uint8_t>(data + pos, data + pos + count));
                        pos += count;
                    } else {
                        bmp256 bits{};
                        for (uint64_t& w : bits) w = bit_buffer::read_u64_le(data, size, pos);
                        sp.blocks.emplace_back(hi, bits);
                    }
                }
                sl.payload = std::move(sp);
            } else if (kind != 2) {
                throw malformed_stream("slicing: unknown slice kind");
            }
            r.n_ += slice_cardinality(sl);
            r.slices_.push_back(std::move(sl));
        }
        return r;
    }

  private:
    // a 2^8-value sub-block: sorted bytes when small, a 256-bit bitmap otherwise
    using bmp256 = std::array<uint64_t, 4>;
    using sub_block = std::variant<std::vector<uint8_t>, bmp256>;
    static constexpr size_t sub_array_max = 32;   // break-even with the 32-byte bitmap
    static constexpr size_t dense_threshold = 1 << 14;  // 2^16 / 4, like the bitmap rule

    struct sparse_slice {
        std::vector<std::pair<uint8_t, sub_block>> blocks;  // sorted by high byte
    };
    struct dense_slice {
        upart::words1024 bits;
    };
    struct full_slice {};

    using slice_payload = std::variant<sparse_slice, dense_slice, full_slice>;

    struct slice {
        uint16_t key;
        slice_payload payload;
    };

    static slice_payload make_slice(std::span<const uint16_t> locals) {
        if (locals.size() == 65536) return full_slice{};
        if (locals.size() > dense_threshold) {
            dense_slice d{upart::words1024(1024, 0)};
            for (uint16_t v : locals) upart::set_word_bit(d.bits, v);
            return d;
        }
        sparse_slice sp;
        size_t i = 0;
        while (i < locals.size()) {
            const uint8_t hi = static_cast<uint8_t>(locals[i] >> 8);
            std::vector<uint8_t> lows;
            while (i < locals.size() && (locals[i] >> 8) == hi)
                lows.push_back(static_cast<uint8_t>(locals[i++] & 0xff));
            if (lows.size() <= sub_array_max) {
                sp.blocks.emplace_back(hi, std::move(lows));
            } else {
                bmp256 b{};
                for (uint8_t v : lows) b[v >> 6] |= uint64_t(1) << (v & 63);
                sp.blocks.emplace_back(hi, b);
            }
        }
        return sp;
    }

    const slice* find_slice(uint16_t key) const {
        const auto it = std::lower_bound(slices_.begin(), slices_.end(), key,
                                         [](const slice& sl, uint16_t k) { return sl.key < k; });
        return it != slices_.end() && it->key == key ? &*it : nullptr;
    }

    static void emit(const slice& sl, std::vector<uint32_t>& out) {
        const uint32_t base = uint32_t(sl.key) << 16;
        if (std::holds_alternative<full_slice>(sl.payload)) {
            for (uint32_t v = 0; v < 65536; ++v) out.push_back(base | v);
        } else if (const auto* d = std::get_if<dense_slice>(&sl.payload)) {
            upart::emit_bits(d->bits, base, out);
        } else {
            for (const auto& [hi, blk] : std::get<sparse_slice>(sl.payload).blocks)
                emit_sub(blk, base | (uint32_t(hi) << 8), out);
        }
    }

    static void emit_sub(const sub_block& blk, uint32_t base, std::vector<uint32_t>& out) {
        if (const auto* arr = std::get_if<std::vector<uint8_t>>(&blk)) {
            for (uint8_t v : *arr) out.push_back(base | v);
        } else {
            const bmp256& b = std::get<bmp256>(blk);
            for (size_t w = 0; w < 4; ++w) {
                uint64_t word = b[w];
                while (word) {
                    out.push_back(base | uint32_t(w * 64 + std::countr_zero(word)));
                    word &= word - 1;
                }
            }
        }
    }

    static bool slice_contains(const slice& sl, uint16_t v) {
        if (std::holds_alternative<full_slice>(sl.payload)) return true;
        if (const auto* d = std::get_if<dense_slice>(&sl.payload))
            return upart::get_word_bit(d->bits, v);
        const auto& blocks = std::get<sparse_slice>(sl.payload).blocks;
        const uint8_t hi = static_cast<uint8_t>(v >> 8);
        const auto it = std::lower_bound(blocks.begin(), blocks.end(), hi,
                                         [](const auto& b, uint8_t k) { return b.first < k; });
        if (it == blocks.end() || it->first != hi) return false;
        const uint8_t lo = static_cast<uint8_t>(v & 0xff);
        if (const auto* arr = std::get_if<std::vector<uint8_t>>(&it->second))
            return std::binary_search(arr->begin(), arr->end(), lo);
        return (std::get<bmp256>(it->second)[lo >> 6] >> (lo & 63)) & 1;
    }

    static int32_t slice_nextgeq(const slice& sl, uint16_t lo) {
        if (std::holds_alternative<full_slice>(sl.payload)) return int32_t(lo);
        if (const auto* d = std::get_if<dense_slice>(&sl.payload)) {
            size_t word = lo >> 6;
            uint64_t cur = d->bits[word] >> (lo & 63) << (lo & 63);
            while (true) {
                if (cur) return int32_t(word * 64 + std::countr_zero(cur));
                if (++word == d->bits.size()) return -1;
                cur = d->bits[word];
            }
        }
        const auto& blocks = std::get<sparse_slice>(sl.payload).blocks;
        const uint8_t hi = static_cast<uint8_t>(lo >> 8);
        auto it = std::lower_bound(blocks.begin(), blocks.end(), hi,
                                   [](const auto& b, uint8_t k) { return b.first < k; });
        for (; it != blocks.end(); ++it) {
            const uint8_t from = it->first == hi ? static_cast<uint8_t>(lo & 0xff) : 0;
            int32_t sub = -1;
            if (const auto* arr = std::get_if<std::vector<uint8_t>>(&it->second)) {
                const auto a = std::lower_bound(arr->begin(), arr->end(), from);
                if (a != arr->end()) sub = int32_t(*a);
            } else {
                const bmp256& b = std::get<bmp256>(it->second);
                size_t word = from >> 6;
                uint64_t cur = b[word] >> (from & 63) << (from & 63);
                while (true) {
                    if (cur) {
                        sub = int32_t(word * 64 + std::countr_zero(cur));
                        break;
                    }
                    if (++word == 4) break;
                    cur = b[word];
                }
            }
            if (sub >= 0) return int32_t(uint32_t(it->first) << 8) | sub;
        }
        return -1;
    }

    // slice-level set operations expand everything through a 2^16 scratch
    // bitmap except the cheap full/sparse shortcuts
    static void intersect_slices(const slice& a, const slice& b, uint32_t base,
                                 std::vector<uint32_t>& out) {
        if (std::holds_alternative<full_slice>(a.payload)) return emit_rebased(b, base, out);
        if (std::holds_alternative<full_slice>(b.payload)) return emit_rebased(a, base, out);
        if (const auto* sa = std::get_if<sparse_slice>(&a.payload)) {
            if (std::holds_alternative<sparse_slice>(b.payload))
                return intersect_sparse(*sa, std::get<sparse_slice>(b.payload), base, out);
            return probe_sparse(*sa, b, base, out);
        }
        if (const auto* sb = std::get_if<sparse_slice>(&b.payload)) return probe_sparse(*sb, a, base, out);
        const auto& da = std::get<dense_slice>(a.payload);
        const auto& db = std::get<dense_slice>(b.payload);
        upart::words1024 w(1024);
        for (size_t i = 0; i < 1024; ++i) w[i] = da.bits[i] & db.bits[i];
        upart::emit_bits(w, base, out);
    }

    static void emit_rebased(const slice& sl, uint32_t base, std::vector<uint32_t>& out) {
        std::vector<uint32_t> tmp;
        emit(sl, tmp);
        for (uint32_t v : tmp) out.push_back(base | (v & 0xffff));
    }

    // every element of the sparse side probed against the other slice
    static void probe_sparse(const sparse_slice& sp, const slice& other, uint32_t base,
                             std::vector<uint32_t>& out) {
        for (const auto& [hi, blk] : sp.blocks) {
            std::vector<uint32_t> tmp;
            emit_sub(blk, uint32_t(hi) << 8, tmp);
            for (uint32_t v : tmp)
                if (slice_contains(other, static_cast<uint16_t>(v))) out.push_back(base | v);
        }
    }

    static void intersect_sparse(const sparse_slice& a, const sparse_slice& b, uint32_t base,
                                 std::vector<uint32_t>& out) {
        size_t i = 0, j = 0;
        while (i < a.blocks.size() && j < b.blocks.size()) {
            if (a.blocks[i].first < b.blocks[j].first) ++i;
            else if (b.blocks[j].first < a.blocks[i].first) ++j;
            else {
                const uint32_t sub_base = base | (uint32_t(a.blocks[i].first) << 8);
                std::vector<uint32_t> av, bv;
                emit_sub(a.blocks[i].second, 0, av);
                emit_sub(b.blocks[j].second, 0, bv);
                size_t x = 0, y = 0;
                while (x < av.size() && y < bv.size()) {
                    if (av[x] < bv[y]) ++x;
                    else if (bv[y] < av[x]) ++y;
                    else {
                        out.push_back(sub_base | av[x]);
                        ++x, ++y;
                    }
                }
                ++i, ++j;
            }
        }
    }

    static void union_slices(const slice& a, const slice& b, uint32_t base,
                             std::vector<uint32_t>& out) {
        if (std::holds_alternative<full_slice>(a.payload) ||
            std::holds_alternative<full_slice>(b.payload)) {
            for (uint32_t v = 0; v < 65536; ++v) out.push_back(base | v);
            return;
        }
        upart::words1024 w(1024, 0);
        mark_slice(a, w);
        mark_slice(b, w);
        upart::emit_bits(w, base, out);
    }

    static void mark_slice(const slice& sl, upart::words1024& w) {
        if (const auto* d = std::get_if<dense_slice>(&sl.payload)) {
            for (size_t i = 0; i < 1024; ++i) w[i] |= d->bits[i];
            return;
        }
        std::vector<uint32_t> tmp;
        emit(sl, tmp);
        for (uint32_t v : tmp) upart::set_word_bit(w, static_cast<uint16_t>(v & 0xffff));
    }

    static uint64_t slice_cardinality(const slice& sl) {
        if (std::holds_alternative<full_slice>(sl.payload)) return 65536;
        if (const auto* d = std::get_if<dense_slice>(&sl.payload)) {
            uint64_t count = 0;
            for (uint64_t w : d->bits) count += std::popcount(w);
            return count;
        }
        uint64_t count = 0;
        for (const auto& [hi, blk] : std::get<sparse_slice>(sl.payload).blocks) {
            if (const auto* arr = std::get_if<std::vector<uint8_t>>(&blk)) count += arr->size();
            else
                for (uint64_t w : std::get<bmp256>(blk)) count += std::popcount(w);
        }
        return count;
    }

    static void append_u32s(std::vector<uint8_t>& out, uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    static uint32_t read_u32s(const uint8_t* data, size_t size, size_t& pos) {
        if (pos + 4 > size) throw malformed_stream("slicing: truncated header");
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }

    std::vector<slice> slices_;
    uint64_t n_ = 0;
};

}  // namespace intseq
