#pragma once
// pef.hpp - partitioned Elias-Fano. A sequence is split into chunks; the
// first level stores the chunk upper bounds and prefix-summed sizes as plain
// Elias-Fano, the second level encodes each chunk over its shrunk universe as
// Elias-Fano, a characteristic bitmap, or nothing at all when the chunk
// covers its whole range. The partition comes from an approximate shortest
// path over geometric cost classes, within (1+eps) of the optimum.

#include "eliasfano.hpp"

namespace intseq {

enum class pef_chunk_kind : uint8_t { ef = 0, bitmap = 1, full = 2 };

struct pef_cost {
    pef_chunk_kind kind;
    uint64_t bits;
};

// exact Elias-Fano payload (H + L) for b elements over universe m
inline uint64_t ef_payload_cost(uint64_t b, uint64_t m) {
    const unsigned l = ceil_log2_ratio(m, b);
    return b * l + b + ((m - 1) >> l) + 1;
}

// cheapest representation of a chunk of b elements spanning universe m:
// nothing when the chunk is full, its characteristic bitvector of m bits, or
// Elias-Fano; ties prefer the simpler kind in that order
inline pef_cost pef_chunk_cost(uint64_t b, uint64_t m) {
    if (b == 0 || b > m) throw contract_violation("pef_chunk_cost: need 1 <= b <= m");
    if (b == m) return {pef_chunk_kind::full, 0};
    const uint64_t ef_bits = ef_payload_cost(b, m);
    if (ef_bits > m) return {pef_chunk_kind::bitmap, m};
    return {pef_chunk_kind::ef, ef_bits};
}

// fixed first-level charge per chunk used by the partitioning: a bound on the
// marginal bits of extending the two first-level sequences plus the tag
inline uint64_t pef_per_chunk_overhead(uint64_t n, uint64_t universe) {
    return ceil_log2(universe) + ceil_log2(n + 1) + 6;
}

namespace detail {

// Shortest path 0 -> n over chunk edges, relaxing for each vertex one edge
// per geometric cost class (1+eps)^j; the leftmost endpoint whose edge cost
// still fits the class stands in for every member of the class.
struct pef_partitioner {
    std::span<const uint32_t> s;
    uint64_t overhead;

    uint64_t edge_cost(size_t l, size_t i) const {
        const uint64_t prev = l == 0 ? uint64_t(-1) : uint64_t(s[l - 1]);  // virtual -1 start
        const uint64_t m = uint64_t(s[i - 1]) - prev;
        return pef_chunk_cost(i - l, m).bits + overhead;
    }

    // chunk cost without the per-chunk overhead; lo1 = smallest value of the
    // chunk's range (prev + 1), hi1 = last value + 1
    static uint64_t chunk_bits(uint64_t b, uint64_t lo1, uint64_t hi1) {
        const uint64_t m = hi1 - lo1;
        if (b == m) return 0;
        const unsigned l = ceil_log2_ratio(m, b);
        const uint64_t ef = b * l + b + ((m - 1) >> l) + 1;
        return ef > m ? m : ef;
    }

    // The approximation parameter drives the class count and hence the DP
    // work, which is O(n * classes). Past this many elements the class ratio
    // is floored at 0.3 to keep builds of long lists affordable; the stated
    // (1+eps) factor is guaranteed (and verified) below it.
    static constexpr size_t fine_eps_max_n = 4096;

    std::vector<uint32_t> partition(double eps) const {
        const size_t n = s.size();
        const uint32_t* sv = s.data();
        std::vector<uint64_t> dist(n + 1, std::numeric_limits<uint64_t>::max());
        std::vector<uint32_t> parent(n + 1, 0);
        dist[0] = 0;

        // geometric class bounds from the cheapest edge up to the single-chunk
        // cost; costs are integers, so the floor of each bound tests exactly
        const double ratio = 1.0 + (n <= fine_eps_max_n ? eps : std::max(eps, 0.3));
        const uint64_t maxcost = edge_cost(0, n);
        std::vector<uint64_t> classes;
        for (double q = double(overhead); q < double(maxcost) * ratio; q *= ratio)
            classes.push_back(static_cast<uint64_t>(q));
        const size_t nclasses = classes.size();
        // per class: the leftmost l whose edge still fits the bound, plus
        // cached sv[l-1]+1 and dist[l] so the steady state needs no random loads
        std::vector<uint32_t> ptr(nclasses, 0);
        std::vector<uint64_t> lo1(nclasses, 0);
        std::vector<uint64_t> dcache(nclasses, 0);

        auto relax = [&](size_t l, size_t i, uint64_t w) {
            if (dist[l] + w < dist[i]) {
                dist[i] = dist[l] + w;
                parent[i] = static_cast<uint32_t>(l);
            }
        };

        for (size_t i = 1; i <= n; ++i) {
            relax(i - 1, i, edge_cost(i - 1, i));
            const uint64_t hi1 = uint64_t(sv[i - 1]) + 1;
            const uint64_t w0 = chunk_bits(i, 0, hi1) + overhead;
            relax(0, i, w0);
            // classes whose bound admits the whole prefix all point at 0 and
            // are covered by the relax above
            size_t j = static_cast<size_t>(
                std::lower_bound(classes.begin(), classes.end(), w0) - classes.begin());
            uint64_t best = dist[i];
            uint32_t best_l = parent[i];
            while (j-- > 0) {
                uint32_t p = ptr[j];
                uint64_t w = chunk_bits(i - p, lo1[j], hi1) + overhead;
                if (w > classes[j]) {  // pointer fell behind: advance it
                    uint64_t pl = lo1[j];
                    while (p + 1 < i) {
                        pl = uint64_t(sv[p]) + 1;
                        ++p;
                        w = chunk_bits(i - p, pl, hi1) + overhead;
                        if (w <= classes[j]) break;
                    }
                    ptr[j] = p;
                    lo1[j] = pl;
                    dcache[j] = dist[p];
                    if (p + 1 >= i && w > classes[j]) {
                        // even the single-element edge misses this budget;
                        // smaller classes are pinned here too
                        if (dcache[j] + w < best) {
                            best = dcache[j] + w;
                            best_l = p;
                        }
                        break;
                    }
                }
                const uint64_t cand = dcache[j] + w;
                if (cand < best) {
                    best = cand;
                    best_l = static_cast<uint32_t>(p);
                }
            }
            if (best < dist[i]) {
                dist[i] = best;
                parent[i] = best_l;
            }
        }
        relax(0, n, maxcost);  // the unpartitioned sequence is always a candidate

        std::vector<uint32_t> bounds;  // chunk end positions, increasing
        for (size_t v = n; v != 0; v = parent[v]) bounds.push_back(static_cast<uint32_t>(v));
        std::reverse(bounds.begin(), bounds.end());
        return bounds;
    }
};

}  // namespace detail

class partitioned_ef {
  public:
    partitioned_ef() = default;

    partitioned_ef(std::span<const uint32_t> s, uint64_t universe, double epsilon = 0.03) {
        if (s.empty()) throw contract_violation("partitioned_ef: empty sequence");
        if (s.back() >= universe)
            throw contract_violation("partitioned_ef: back() must be < universe");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw contract_violation("partitioned_ef: epsilon outside (0,1)");
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] <= s[i - 1])
                throw contract_violation("partitioned_ef: input not strictly increasing");
        n_ = s.size();
        universe_ = universe;

        const detail::pef_partitioner part{s, pef_per_chunk_overhead(n_, universe_)};
        const std::vector<uint32_t> bounds = part.partition(epsilon);
        build_chunks(s, bounds);
    }

    // hand-picked chunk boundaries; used by tests to pin partitions
    partitioned_ef(std::span<const uint32_t> s, uint64_t universe,
                   const std::vector<uint32_t>& bounds)
        : n_(s.size()), universe_(universe) {
        build_chunks(s, bounds);
    }

    uint64_t size() const { return n_; }
    uint64_t universe() const { return universe_; }
    size_t num_chunks() const { return chunks_.size(); }
    pef_chunk_kind chunk_kind(size_t c) const { return chunks_[c].kind; }
    uint64_t chunk_size(size_t c) const { return chunks_[c].size; }
    // [lo, last]: the value range the chunk is encoded over
    std::pair<uint64_t, uint64_t> chunk_span(size_t c) const {
        return {chunks_[c].lo, chunks_[c].last};
    }

    uint64_t chunk_payload_bits() const {
        uint64_t bits = 0;
        for (const chunk& c : chunks_)
            bits += c.kind == pef_chunk_kind::ef ? c.ef.payload_bits()
                  : c.kind == pef_chunk_kind::bitmap ? c.bitmap.size_bits()
                                                     : 0;
        return bits;
    }

    uint64_t first_level_bits() const {
        return upper_bounds_.payload_bits() + sizes_.payload_bits() + 2 * num_chunks();
    }

    uint64_t payload_bits() const { return chunk_payload_bits() + first_level_bits(); }

    // the partitioning cost model value of the built partition
    uint64_t partition_cost_bits() const {
        uint64_t bits = 0;
        const uint64_t overhead = pef_per_chunk_overhead(n_, universe_);
        for (const chunk& c : chunks_)
            bits += pef_chunk_cost(c.size, c.last - c.lo + 1).bits + overhead;
        return bits;
    }

    uint64_t access(uint64_t i) const {  // 1-based
        if (i == 0 || i > n_) throw contract_violation("partitioned_ef: index out of range");
        const auto [ci, cum] = sizes_.nextgeq_index(i);
        const chunk& c = chunks_[ci - 1];
        const uint64_t local = i - (cum - c.size);  // 1-based within the chunk
        switch (c.kind) {
            case pef_chunk_kind::full: return c.lo + local - 1;
            case pef_chunk_kind::ef: return c.lo + c.ef.access(local);
            case pef_chunk_kind::bitmap: {
                uint64_t seen = 0;
                for (uint64_t pos = 0;; ++pos) {
                    if (c.bitmap.get_bit(pos) && ++seen == local) return c.lo + pos;
                }
            }
        }
        return 0;  // unreachable
    }

    uint64_t nextgeq(uint64_t x) const {
        const auto [ci, ub] = upper_bounds_.nextgeq_index(x);
        if (ub == exhausted) return exhausted;
        return chunk_nextgeq(chunks_[ci - 1], x);
    }

    std::vector<uint32_t> decode() const {
        std::vector<uint32_t> out;
        out.reserve(n_);
        for (const chunk& c : chunks_) decode_chunk(c, out);
        return out;
    }

    void serialize(std::vector<uint8_t>& out) const {
        bit_buffer::append_u64_le(out, n_);
        bit_buffer::append_u64_le(out, universe_);
        bit_buffer::append_u64_le(out, chunks_.size());
        upper_bounds_.serialize(out);
        sizes_.serialize(out);
        bit_buffer tags;
        for (const chunk& c : chunks_) tags.append_bits(uint64_t(c.kind), 2);
        tags.serialize(out);
        for (const chunk& c : chunks_) {
            if (c.kind == pef_chunk_kind::ef) c.ef.serialize(out);
            if (c.kind == pef_chunk_kind::bitmap) c.bitmap.serialize(out);
        }
    }

    static partitioned_ef deserialize(const uint8_t* data, size_t size, size_t& pos) {
        partitioned_ef p;
        p.n_ = bit_buffer::read_u64_le(data, size, pos);
        p.universe_ = bit_buffer::read_u64_le(data, size, pos);
        const uint64_t k = bit_buffer::read_u64_le(data, size, pos);
        p.upper_bounds_ = elias_fano::deserialize(data, size, pos);
        p.sizes_ = elias_fano::deserialize(data, size, pos);
        const bit_buffer tags = bit_buffer::deserialize(data, size, pos);
        if (tags.size_bits() != 2 * k) throw malformed_stream("partitioned_ef: bad tag stream");
        p.chunks_.resize(k);
        uint64_t prev_last = 0, prev_cum = 0;
        for (uint64_t c = 0; c < k; ++c) {
            chunk& ch = p.chunks_[c];
            ch.kind = static_cast<pef_chunk_kind>(tags.get_bits(2 * c, 2));
            if (uint64_t(ch.kind) > 2) throw malformed_stream("partitioned_ef: bad chunk tag");
            ch.lo = c == 0 ? 0 : prev_last + 1;
            ch.last = p.upper_bounds_.access(c + 1);
            const uint64_t cum = p.sizes_.access(c + 1);
            ch.size = cum - prev_cum;
            prev_last = ch.last;
            prev_cum = cum;
            if (ch.kind == pef_chunk_kind::ef) ch.ef = elias_fano::deserialize(data, size, pos);
            if (ch.kind == pef_chunk_kind::bitmap) {
                ch.bitmap = bit_buffer::deserialize(data, size, pos);
                if (ch.bitmap.size_bits() != ch.last - ch.lo + 1)
                    throw malformed_stream("partitioned_ef: bitmap size mismatch");
            }
        }
        return p;
    }

  private:
    friend class pef_cursor;

    struct chunk {
        pef_chunk_kind kind = pef_chunk_kind::full;
        uint64_t lo = 0;    // smallest representable value
        uint64_t last = 0;  // upper bound, always a member
        uint64_t size = 0;
        elias_fano ef;
        bit_buffer bitmap;
    };

    void build_chunks(std::span<const uint32_t> s, const std::vector<uint32_t>& bounds) {
        if (bounds.empty() || bounds.back() != s.size())
            throw contract_violation("partitioned_ef: bad chunk bounds");
        std::vector<uint32_t> uppers, cums;
        uint64_t begin = 0;
        for (uint32_t end : bounds) {
            if (end <= begin) throw contract_violation("partitioned_ef: bad chunk bounds");
            chunk c;
            c.lo = begin == 0 ? 0 : uint64_t(s[begin - 1]) + 1;
            c.last = s[end - 1];
            c.size = end - begin;
            const uint64_t m = c.last - c.lo + 1;
            c.kind = pef_chunk_cost(c.size, m).kind;
            if (c.kind == pef_chunk_kind::bitmap) {
                bit_buffer bits;
                bits.append_zeros(m);
                for (uint64_t i = begin; i < end; ++i) bits.set_bit(s[i] - c.lo);
                c.bitmap = std::move(bits);
            } else if (c.kind == pef_chunk_kind::ef) {
                std::vector<uint32_t> offsets;
                offsets.reserve(c.size);
                for (uint64_t i = begin; i < end; ++i)
                    offsets.push_back(static_cast<uint32_t>(s[i] - c.lo));
                c.ef = elias_fano(offsets, m);
            }
            chunks_.push_back(std::move(c));
            uppers.push_back(s[end - 1]);
            cums.push_back(end);
            begin = end;
        }
        upper_bounds_ = elias_fano(uppers, universe_);
        sizes_ = elias_fano(cums, n_ + 1);
    }

    uint64_t chunk_nextgeq(const chunk& c, uint64_t x) const {
        if (x <= c.lo) x = c.lo;
        switch (c.kind) {
            case pef_chunk_kind::full: return x;
            case pef_chunk_kind::ef: return c.lo + c.ef.nextgeq(x - c.lo);
            case pef_chunk_kind::bitmap: {
                for (uint64_t pos = x - c.lo;; ++pos)
                    if (c.bitmap.get_bit(pos)) return c.lo + pos;
            }
        }
        return 0;  // unreachable
    }

    void decode_chunk(const chunk& c, std::vector<uint32_t>& out) const {
        switch (c.kind) {
            case pef_chunk_kind::full:
                for (uint64_t v = c.lo; v <= c.last; ++v) out.push_back(static_cast<uint32_t>(v));
                return;
            case pef_chunk_kind::ef:
                for (ef_cursor cur(c.ef); cur.valid(); cur.next())
                    out.push_back(static_cast<uint32_t>(c.lo + cur.value()));
                return;
            case pef_chunk_kind::bitmap: {
                const uint64_t m = c.last - c.lo + 1;
                for (uint64_t pos = 0; pos < m; ++pos)
                    if (c.bitmap.get_bit(pos)) out.push_back(static_cast<uint32_t>(c.lo + pos));
                return;
            }
        }
    }

    uint64_t n_ = 0;
    uint64_t universe_ = 0;
    std::vector<chunk> chunks_;
    elias_fano upper_bounds_;
    elias_fano sizes_;
};

// Forward cursor over a partitioned_ef: one chunk decoded at a time.
class pef_cursor {
  public:
    explicit pef_cursor(const partitioned_ef& p) : p_(&p) { load_chunk(0); }

    bool valid() const { return chunk_ < p_->chunks_.size(); }
    uint64_t size() const { return p_->size(); }
    uint32_t value() const { return buf_[idx_]; }

    void next() {
        if (++idx_ >= buf_.size()) load_chunk(chunk_ + 1);
    }

    uint64_t nextgeq(uint64_t x) {
        if (!valid()) return exhausted;
        if (p_->chunks_[chunk_].last < x) {
            const auto [ci, ub] = p_->upper_bounds_.nextgeq_index(x);
            if (ub == exhausted) {
                chunk_ = p_->chunks_.size();
                return exhausted;
            }
            load_chunk(ci - 1);
        }
        while (idx_ < buf_.size() && buf_[idx_] < x) ++idx_;
        return buf_[idx_];
    }

  private:
    void load_chunk(size_t c) {
        chunk_ = c;
        idx_ = 0;
        buf_.clear();
        if (c < p_->chunks_.size()) p_->decode_chunk(p_->chunks_[c], buf_);
    }

    const partitioned_ef* p_;
    size_t chunk_ = 0;
    size_t idx_ = 0;
    std::vector<uint32_t> buf_;
};

}  // namespace intseq
