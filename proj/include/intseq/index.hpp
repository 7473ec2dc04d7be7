#pragma once
// index.hpp - the inverted index: a universe, one encoded posting list per
// term behind a uniform decode/nextgeq interface, and AND/OR evaluation.
// Universe-partitioned codecs answer queries through their native set
// algebra; everything else goes through NextGEQ-driven intersection and
// k-way-merge union.

#include <map>
#include <string>

#include "blockcodecs.hpp"
#include "eliasfano.hpp"
#include "pef.hpp"
#include "universepart.hpp"

namespace intseq {

namespace detail {
template <typename... Fs>
struct overload : Fs... {
    using Fs::operator()...;
};
template <typename... Fs>
overload(Fs...) -> overload<Fs...>;
}  // namespace detail

enum class codec_id : uint8_t {
    vbyte,
    gamma128,
    delta128,
    rice128,
    golomb128,
    zeta128,
    fib128,
    scdense128,
    simple9,
    simple16,
    simple8b,
    pfor,
    optpfor,
    ef,
    pef,
    bic,
    roaring,
    slicing,
};

inline const std::vector<std::pair<std::string, codec_id>>& codec_registry() {
    static const std::vector<std::pair<std::string, codec_id>> table = {
        {"vbyte", codec_id::vbyte},         {"gamma128", codec_id::gamma128},
        {"delta128", codec_id::delta128},   {"rice128", codec_id::rice128},
        {"golomb128", codec_id::golomb128}, {"zeta128", codec_id::zeta128},
        {"fib128", codec_id::fib128},       {"scdense128", codec_id::scdense128},
        {"simple9", codec_id::simple9},     {"simple16", codec_id::simple16},
        {"simple8b", codec_id::simple8b},   {"pfor", codec_id::pfor},
        {"optpfor", codec_id::optpfor},     {"ef", codec_id::ef},
        {"pef", codec_id::pef},             {"bic", codec_id::bic},
        {"roaring", codec_id::roaring},     {"slicing", codec_id::slicing},
    };
    return table;
}

inline codec_id codec_from_name(const std::string& name) {
    for (const auto& [n, id] : codec_registry())
        if (n == name) return id;
    throw contract_violation("unknown codec: " + name);
}

inline std::string codec_name(codec_id id) {
    for (const auto& [n, i] : codec_registry())
        if (i == id) return n;
    return "?";
}

inline bool is_universe_partitioned(codec_id id) {
    return id == codec_id::roaring || id == codec_id::slicing;
}

inline block_codec block_codec_of(codec_id id) {
    switch (id) {
        case codec_id::vbyte: return block_codec::vbyte;
        case codec_id::gamma128: return block_codec::gamma;
        case codec_id::delta128: return block_codec::delta;
        case codec_id::rice128: return block_codec::rice;
        case codec_id::golomb128: return block_codec::golomb;
        case codec_id::zeta128: return block_codec::zeta;
        case codec_id::fib128: return block_codec::fibonacci;
        case codec_id::scdense128: return block_codec::scdense;
        case codec_id::simple9: return block_codec::simple9;
        case codec_id::simple16: return block_codec::simple16;
        case codec_id::simple8b: return block_codec::simple8b;
        case codec_id::pfor: return block_codec::pfor;
        case codec_id::optpfor: return block_codec::optpfor;
        case codec_id::bic: return block_codec::bic;
        default: throw contract_violation("not a block codec");
    }
}

struct codec_config {
    codec_id codec = codec_id::optpfor;
    double pef_epsilon = 0.03;
    bic_mode mode = bic_mode::leftmost_minimal;
    // termID -> codec, overriding the global choice
    std::map<uint32_t, codec_id> per_list;

    codec_id codec_for(uint32_t term) const {
        const auto it = per_list.find(term);
        return it == per_list.end() ? codec : it->second;
    }
};

// One encoded posting list behind the uniform interface.
class posting_list {
  public:
    posting_list() = default;

    posting_list(std::span<const uint32_t> s, uint64_t universe, codec_id id,
                 const codec_config& cfg)
        : id_(id) {
        if (s.empty()) throw contract_violation("posting_list: empty list");
        if (s.back() >= universe) throw contract_violation("posting_list: docID outside universe");
        switch (id) {
            case codec_id::ef: impl_ = elias_fano(s, universe); break;
            case codec_id::pef: impl_ = partitioned_ef(s, universe, cfg.pef_epsilon); break;
            case codec_id::roaring: impl_ = roaring_set(s); break;
            case codec_id::slicing: impl_ = sliced_set(s); break;
            default:
                impl_ = blocked_list(s, block_codec_of(id), blocked_list::default_block_len,
                                     cfg.mode);
                break;
        }
    }

    codec_id codec() const { return id_; }

    uint64_t size() const {
        return std::visit([](const auto& l) -> uint64_t { return l.size(); }, impl_);
    }

    std::vector<uint32_t> decode() const {
        return std::visit([](const auto& l) { return l.decode(); }, impl_);
    }

    void decode_into(std::vector<uint32_t>& out) const {
        auto v = decode();
        out.insert(out.end(), v.begin(), v.end());
    }

    uint64_t nextgeq(uint32_t x) const {
        return std::visit([&](const auto& l) -> uint64_t { return l.nextgeq(x); }, impl_);
    }

    // Encoded payload bits, the numerator of bits/int. Every payload decodes
    // on its own; skip tables and sampling indexes are query acceleration and
    // are not charged here.
    uint64_t payload_bits() const {
        if (const auto* b = std::get_if<blocked_list>(&impl_)) return b->payload_bits();
        if (const auto* e = std::get_if<elias_fano>(&impl_)) return e->payload_bits();
        if (const auto* p = std::get_if<partitioned_ef>(&impl_)) return p->payload_bits();
        if (const auto* r = std::get_if<roaring_set>(&impl_)) return 8 * r->serialized_bytes();
        std::vector<uint8_t> bytes;
        std::get<sliced_set>(impl_).serialize(bytes);
        return 8 * bytes.size();
    }

    const blocked_list* as_blocked() const { return std::get_if<blocked_list>(&impl_); }
    const elias_fano* as_ef() const { return std::get_if<elias_fano>(&impl_); }
    const partitioned_ef* as_pef() const { return std::get_if<partitioned_ef>(&impl_); }
    const roaring_set* as_roaring() const { return std::get_if<roaring_set>(&impl_); }
    const sliced_set* as_sliced() const { return std::get_if<sliced_set>(&impl_); }

  private:
    codec_id id_ = codec_id::optpfor;
    std::variant<blocked_list, elias_fano, partitioned_ef, roaring_set, sliced_set> impl_;
};

// Forward cursor over any posting list. Universe-partitioned lists hold their
// decoded contents; the others walk their compressed form.
class posting_cursor {
  public:
    explicit posting_cursor(const posting_list& list) {
        if (const auto* b = list.as_blocked()) {
            impl_.emplace<blocked_cursor>(*b);
        } else if (const auto* e = list.as_ef()) {
            impl_.emplace<ef_cursor>(*e);
        } else if (const auto* p = list.as_pef()) {
            impl_.emplace<pef_cursor>(*p);
        } else {
            impl_.emplace<materialized>(list.decode());
        }
        n_ = list.size();
    }

    uint64_t size() const { return n_; }

    bool valid() const {
        return std::visit(detail::overload{[](std::monostate) { return false; },
                                   [](const auto& c) { return c.valid(); }},
                          impl_);
    }
    uint32_t value() const {
        return std::visit(detail::overload{[](std::monostate) -> uint32_t { return 0; },
                                   [](const auto& c) -> uint32_t { return c.value(); }},
                          impl_);
    }
    void next() {
        std::visit(detail::overload{[](std::monostate) {}, [](auto& c) { c.next(); }}, impl_);
    }
    uint64_t nextgeq(uint32_t x) {
        return std::visit(detail::overload{[](std::monostate) { return exhausted; },
                                   [&](auto& c) -> uint64_t { return c.nextgeq(x); }},
                          impl_);
    }

  private:
    struct materialized {
        std::vector<uint32_t> values;
        size_t idx = 0;
        explicit materialized(std::vector<uint32_t> v) : values(std::move(v)) {}
        bool valid() const { return idx < values.size(); }
        uint32_t value() const { return values[idx]; }
        void next() { ++idx; }
        uint64_t nextgeq(uint32_t x) {
            while (idx < values.size() && values[idx] < x) ++idx;
            return valid() ? values[idx] : exhausted;
        }
    };

    std::variant<std::monostate, blocked_cursor, ef_cursor, pef_cursor, materialized> impl_;
    uint64_t n_ = 0;
};

class inverted_index {
  public:
    inverted_index() = default;

    inverted_index(uint64_t universe, const std::vector<std::vector<uint32_t>>& lists,
                   const codec_config& cfg)
        : universe_(universe) {
        lists_.reserve(lists.size());
        for (uint32_t t = 0; t < lists.size(); ++t)
            lists_.emplace_back(lists[t], universe, cfg.codec_for(t), cfg);
    }

    uint64_t universe() const { return universe_; }
    size_t num_lists() const { return lists_.size(); }
    const posting_list& list(uint32_t term) const {
        if (term >= lists_.size()) throw contract_violation("unknown termID");
        return lists_[term];
    }

    uint64_t total_integers() const {
        uint64_t n = 0;
        for (const posting_list& l : lists_) n += l.size();
        return n;
    }

    uint64_t total_payload_bits() const {
        uint64_t bits = 0;
        for (const posting_list& l : lists_) bits += l.payload_bits();
        return bits;
    }

    // exact conjunction, ascending docIDs
    std::vector<uint32_t> and_query(std::span<const uint32_t> terms) const {
        if (terms.size() < 2) throw contract_violation("and_query: need at least two terms");
        std::vector<const posting_list*> ls = gather(terms);
        std::sort(ls.begin(), ls.end(),
                  [](const posting_list* a, const posting_list* b) { return a->size() < b->size(); });
        if (all_roaring(ls)) return and_native<roaring_set>(ls, [](const posting_list* l) {
                return l->as_roaring();
            });
        if (all_sliced(ls)) return and_native<sliced_set>(ls, [](const posting_list* l) {
                return l->as_sliced();
            });

        // candidate-driven NextGEQ loop anchored on the shortest list
        std::vector<posting_cursor> cursors;
        cursors.reserve(ls.size());
        for (const posting_list* l : ls) cursors.emplace_back(*l);
        std::vector<uint32_t> out;
        uint64_t candidate = cursors[0].nextgeq(0);
        while (candidate != exhausted) {
            size_t matched = 1;
            for (size_t i = 1; i < cursors.size(); ++i) {
                const uint64_t v = cursors[i].nextgeq(static_cast<uint32_t>(candidate));
                if (v != candidate) {
                    candidate = v;
                    break;
                }
                ++matched;
            }
            if (candidate == exhausted) break;
            if (matched == cursors.size()) {
                out.push_back(static_cast<uint32_t>(candidate));
                candidate = candidate + 1 < universe_
                                ? cursors[0].nextgeq(static_cast<uint32_t>(candidate) + 1)
                                : exhausted;
            } else {
                candidate = cursors[0].nextgeq(static_cast<uint32_t>(candidate));
            }
        }
        return out;
    }

    // exact disjunction, ascending docIDs
    std::vector<uint32_t> or_query(std::span<const uint32_t> terms) const {
        if (terms.empty()) throw contract_violation("or_query: need at least one term");
        std::vector<const posting_list*> ls = gather(terms);
        if (all_roaring(ls)) return or_native<roaring_set>(ls, [](const posting_list* l) {
                return l->as_roaring();
            });
        if (all_sliced(ls)) return or_native<sliced_set>(ls, [](const posting_list* l) {
                return l->as_sliced();
            });

        std::vector<posting_cursor> cursors;
        cursors.reserve(ls.size());
        for (const posting_list* l : ls) cursors.emplace_back(*l);
        std::vector<uint32_t> out;
        // tournament over the cursor heads
        auto cmp = [&](size_t a, size_t b) { return cursors[a].value() > cursors[b].value(); };
        std::vector<size_t> heap;
        for (size_t i = 0; i < cursors.size(); ++i)
            if (cursors[i].valid()) heap.push_back(i);
        std::make_heap(heap.begin(), heap.end(), cmp);
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), cmp);
            const size_t i = heap.back();
            heap.pop_back();
            const uint32_t v = cursors[i].value();
            if (out.empty() || out.back() != v) out.push_back(v);
            cursors[i].next();
            if (cursors[i].valid()) {
                heap.push_back(i);
                std::push_heap(heap.begin(), heap.end(), cmp);
            }
        }
        return out;
    }

  private:
    std::vector<const posting_list*> gather(std::span<const uint32_t> terms) const {
        std::vector<const posting_list*> ls;
        ls.reserve(terms.size());
        for (uint32_t t : terms) ls.push_back(&list(t));
        return ls;
    }

    static bool all_roaring(const std::vector<const posting_list*>& ls) {
        return std::all_of(ls.begin(), ls.end(),
                           [](const posting_list* l) { return l->as_roaring() != nullptr; });
    }
    static bool all_sliced(const std::vector<const posting_list*>& ls) {
        return std::all_of(ls.begin(), ls.end(),
                           [](const posting_list* l) { return l->as_sliced() != nullptr; });
    }

    // fold the native set algebra: the two smallest first, then membership probes
    template <typename Set, typename Get>
    static std::vector<uint32_t> and_native(const std::vector<const posting_list*>& ls, Get get) {
        std::vector<uint32_t> acc = set_intersect(*get(ls[0]), *get(ls[1]));
        for (size_t i = 2; i < ls.size() && !acc.empty(); ++i) {
            const Set* s = get(ls[i]);
            std::vector<uint32_t> next;
            next.reserve(acc.size());
            for (uint32_t v : acc)
                if (s->contains(v)) next.push_back(v);
            acc = std::move(next);
        }
        return acc;
    }

    template <typename Set, typename Get>
    static std::vector<uint32_t> or_native(const std::vector<const posting_list*>& ls, Get get) {
        if (ls.size() == 1) return get(ls[0])->decode();
        std::vector<uint32_t> acc = set_union(*get(ls[0]), *get(ls[1]));
        for (size_t i = 2; i < ls.size(); ++i) {
            const std::vector<uint32_t> other = get(ls[i])->decode();
            std::vector<uint32_t> merged;
            merged.reserve(acc.size() + other.size());
            std::set_union(acc.begin(), acc.end(), other.begin(), other.end(),
                           std::back_inserter(merged));
            acc = std::move(merged);
        }
        return acc;
    }

    uint64_t universe_ = 0;
    std::vector<posting_list> lists_;
};

}  // namespace intseq
