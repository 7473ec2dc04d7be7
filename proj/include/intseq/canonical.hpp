#pragma once
// canonical.hpp - lexicographic codeword assignment from a length sequence and
// the compact table-driven encoder/decoder built on two M+1 entry arrays.

#include <algorithm>
#include <vector>

#include "bitbuffer.hpp"

namespace intseq {

struct codeword {
    uint64_t bits;   // right-justified
    uint32_t length;

    std::string to_string() const {
        std::string s(length, '0');
        for (uint32_t i = 0; i < length; ++i)
            if ((bits >> (length - 1 - i)) & 1) s[i] = '1';
        return s;
    }
};

namespace detail {

inline void check_lengths(const std::vector<uint32_t>& lengths) {
    if (lengths.empty()) throw contract_violation("canonical: empty length sequence");
    uint32_t prev = 0;
    for (uint32_t len : lengths) {
        if (len == 0 || len > 62) throw contract_violation("canonical: lengths must be in 1..62");
        if (len < prev) throw contract_violation("canonical: lengths must be non-decreasing");
        prev = len;
    }
    const uint32_t m = lengths.back();
    uint64_t kraft = 0;  // scaled by 2^m
    for (uint32_t len : lengths) {
        kraft += uint64_t(1) << (m - len);
        if (kraft > (uint64_t(1) << m))
            throw contract_violation("canonical: lengths violate the Kraft inequality");
    }
}

}  // namespace detail

// Lexicographically sorted codewords for a non-decreasing length sequence
// satisfying Kraft: the first codeword is all zeros, every next one is the
// lexicographic successor at the previous length, zero-padded on the right
// when the length grows.
inline std::vector<codeword> assign_lexicographic(const std::vector<uint32_t>& lengths) {
    detail::check_lengths(lengths);
    std::vector<codeword> words;
    words.reserve(lengths.size());
    uint64_t bits = 0;
    uint32_t cur = lengths[0];
    words.push_back({0, cur});
    for (size_t i = 1; i < lengths.size(); ++i) {
        ++bits;
        assert(bits < (uint64_t(1) << cur));  // guaranteed by the Kraft check
        bits <<= lengths[i] - cur;
        cur = lengths[i];
        words.push_back({bits, cur});
    }
    return words;
}

enum class search_strategy { linear, binary, direct_table };

// A prefix-free code over symbols 1..u as the two compact arrays indexed by
// codeword length, with sentinels first[M+1] = u+1 and values[M+1] = 2^M - 1.
class canonical_code {
  public:
    explicit canonical_code(const std::vector<uint32_t>& lens) : lengths_(lens) {
        detail::check_lengths(lens);
        m_ = lens.back();
        const uint64_t u = lens.size();
        first_.assign(m_ + 2, 0);
        values_.assign(m_ + 2, 0);
        first_[m_ + 1] = u + 1;
        values_[m_ + 1] = (uint64_t(1) << m_) - 1;

        const auto words = assign_lexicographic(lens);
        std::vector<bool> used(m_ + 2, false);
        for (uint64_t x = u; x >= 1; --x) {  // keep the first symbol per length
            const uint32_t len = lens[x - 1];
            first_[len] = x;
            values_[len] = words[x - 1].bits << (m_ - len);  // left-justified M-bit value
            used[len] = true;
        }
        // holes take the entry of the smallest longer used length
        for (uint32_t len = m_; len >= 1; --len) {
            if (!used[len]) {
                first_[len] = first_[len + 1];
                values_[len] = values_[len + 1];
            }
        }
    }

    uint32_t max_length() const { return m_; }
    uint64_t num_symbols() const { return lengths_.size(); }
    uint32_t length(uint64_t x) const { return lengths_[x - 1]; }
    const std::vector<uint64_t>& first() const { return first_; }
    const std::vector<uint64_t>& values() const { return values_; }

    codeword codeword_of(uint64_t x) const {
        check_symbol(x);
        const uint32_t len = lengths_[x - 1];
        const uint64_t offset = x - first_[len];
        return {(values_[len] >> (m_ - len)) + offset, len};
    }

    void encode(uint64_t x, bit_buffer& out) const {
        check_symbol(x);
        const uint32_t len = find_length_by_symbol(x);
        const uint64_t offset = x - first_[len];
        const uint64_t jump = uint64_t(1) << (m_ - len);
        out.append_bits((values_[len] + offset * jump) >> (m_ - len), len);
    }

    // Preferred decode-side search: direct addressing when the table stays
    // cache-resident, binary search otherwise.
    search_strategy preferred_strategy() const {
        return m_ <= direct_table_max_bits ? search_strategy::direct_table
                                           : search_strategy::binary;
    }

    static constexpr uint32_t direct_table_max_bits = 16;

  private:
    friend class canonical_decoder;

    void check_symbol(uint64_t x) const {
        if (x == 0 || x > lengths_.size()) throw contract_violation("canonical: symbol out of range");
    }

    // largest len with first[len] <= x (skipping hole duplicates)
    uint32_t find_length_by_symbol(uint64_t x) const {
        const auto it = std::upper_bound(first_.begin() + 1, first_.end(), x);
        return static_cast<uint32_t>(it - first_.begin()) - 1;
    }

    uint32_t m_;
    std::vector<uint32_t> lengths_;
    std::vector<uint64_t> first_;
    std::vector<uint64_t> values_;
};

// Streaming decoder holding a hot buffer of M bits, refilled (zero padded at
// end of stream) after each symbol. Streams are not self-terminating: the
// caller supplies the symbol count.
class canonical_decoder {
  public:
    canonical_decoder(const canonical_code& code, bit_reader& source,
                      search_strategy strategy)
        : code_(&code), source_(&source), strategy_(strategy) {
        if (strategy_ == search_strategy::direct_table) {
            if (code.max_length() > canonical_code::direct_table_max_bits)
                throw contract_violation("canonical: direct table refused for M > 16");
            table_.resize(uint64_t(1) << code.max_length());
            for (uint64_t v = 0; v < table_.size(); ++v) table_[v] = search_binary(v);
        }
        buffer_ = source_->take_padded(code.max_length());
    }

    canonical_decoder(const canonical_code& code, bit_reader& source)
        : canonical_decoder(code, source, code.preferred_strategy()) {}

    uint64_t decode() {
        const uint32_t m = code_->max_length();
        uint32_t len = 0;
        switch (strategy_) {
            case search_strategy::linear: len = search_linear(buffer_); break;
            case search_strategy::binary: len = search_binary(buffer_); break;
            case search_strategy::direct_table: len = table_[buffer_]; break;
        }
        if (len == 0 || len > m) throw malformed_stream("canonical: no codeword matches buffer");
        const uint64_t offset = (buffer_ - code_->values_[len]) >> (m - len);
        const uint64_t symbol = code_->first_[len] + offset;
        if (symbol > code_->num_symbols() || code_->lengths_[symbol - 1] != len)
            throw malformed_stream("canonical: buffer decodes outside the symbol range");
        const uint64_t mask = (uint64_t(1) << m) - 1;
        buffer_ = ((buffer_ << len) & mask) + source_->take_padded(len);
        return symbol;
    }

  private:
    // largest len with values[len] <= v; 0 when below every codeword
    uint32_t search_linear(uint64_t v) const {
        const auto& values = code_->values_;
        uint32_t len = 0;
        for (uint32_t l = 1; l < values.size(); ++l)
            if (values[l] <= v) len = l;
            else break;
        return len == code_->max_length() + 1 ? code_->max_length() : len;
    }

    uint32_t search_binary(uint64_t v) const {
        const auto& values = code_->values_;
        const auto it = std::upper_bound(values.begin() + 1, values.end(), v);
        const uint32_t len = static_cast<uint32_t>(it - values.begin()) - 1;
        return len == code_->max_length() + 1 ? code_->max_length() : len;
    }

    const canonical_code* code_;
    bit_reader* source_;
    search_strategy strategy_;
    uint64_t buffer_ = 0;
    std::vector<uint32_t> table_;
};

}  // namespace intseq
