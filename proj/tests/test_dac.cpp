#include "doctest.h"

#include <vector>

#include "intseq/dac.hpp"
#include "test_util.hpp"

using namespace intseq;

namespace {
const std::vector<uint64_t> sample{2, 7, 12, 5, 13, 142, 61, 129};
}

TEST_CASE("worked example with 3-bit chunks") {
    const dac_vector v(sample, 3);
    CHECK(v.num_levels() == 3);
    CHECK(v.control(0).bits().to_string() == "00101111");
    CHECK(v.control(1).bits().to_string() == "00101");
    CHECK(v.control(1).ones() == 2);
    CHECK(v.control(2).bits().to_string() == "00");

    // Access(5): first chunk 101, control set, rank 2, second chunk 001 -> 13
    CHECK(v.control(0).rank1(5) == 2);
    CHECK(v.access(5) == 13);

    for (size_t i = 1; i <= sample.size(); ++i) CHECK(v.access(i) == sample[i - 1]);
    CHECK(v.decode() == sample);
    CHECK_THROWS_AS(v.access(0), contract_violation);
    CHECK_THROWS_AS(v.access(9), contract_violation);
}

TEST_CASE("zero values take one all-zero chunk") {
    const dac_vector v(std::vector<uint64_t>{0}, 4);
    CHECK(v.num_levels() == 1);
    CHECK(v.level_size(0) == 1);
    CHECK(v.access(1) == 0);
    CHECK(v.payload_bits() == 5);  // one 4-bit chunk plus its control bit
}

TEST_CASE("random vectors roundtrip across chunk widths") {
    testutil::rng rng(97);
    for (unsigned b = 1; b <= 16; ++b) {
        for (int iter = 0; iter < 12; ++iter) {
            const size_t n = rng.between(1, 2000);
            std::vector<uint64_t> values;
            for (size_t i = 0; i < n; ++i) values.push_back(rng.next() >> rng.between(20, 63));
            const dac_vector v(values, b);
            CHECK(v.decode() == values);

            // level count is bounded by the widest value
            uint64_t maxv = 0;
            for (uint64_t x : values) maxv = std::max(maxv, x);
            const uint64_t maxwidth = std::max<uint64_t>(1, bit_width_u64(maxv));
            CHECK(v.num_levels() <= ceil_div(maxwidth, b));

            // the control chain shrinks level by level
            for (size_t k = 1; k < v.num_levels(); ++k)
                CHECK(v.level_size(k) == v.control(k - 1).ones());
        }
    }
}

TEST_CASE("size identity") {
    testutil::rng rng(333);
    for (int iter = 0; iter < 50; ++iter) {
        const unsigned b = static_cast<unsigned>(rng.between(1, 16));
        const size_t n = rng.between(1, 500);
        std::vector<uint64_t> values;
        for (size_t i = 0; i < n; ++i) values.push_back(rng.next() >> rng.between(24, 63));
        const dac_vector v(values, b);
        uint64_t expect = 0;
        for (uint64_t x : values) {
            const uint64_t width = std::max<uint64_t>(1, ceil_div(bit_width_u64(x), b));
            expect += width * (b + 1);
        }
        CHECK(v.payload_bits() == expect);
    }
}

TEST_CASE("rank1(select1(i)) = i on every control bitmap") {
    testutil::rng rng(11);
    std::vector<uint64_t> values;
    for (int i = 0; i < 5000; ++i) values.push_back(rng.next() >> rng.between(40, 63));
    const dac_vector v(values, 4);
    for (size_t k = 0; k < v.num_levels(); ++k) {
        const bit_vector_rs& c = v.control(k);
        for (uint64_t i = 1; i <= c.ones(); ++i) CHECK(c.rank1(c.select1(i)) == i);
    }
}

TEST_CASE("serialization roundtrip") {
    testutil::rng rng(71);
    std::vector<uint64_t> values;
    for (int i = 0; i < 700; ++i) values.push_back(rng.next() >> rng.between(30, 63));
    const dac_vector v(values, 5);
    std::vector<uint8_t> bytes;
    v.serialize(bytes);
    size_t pos = 0;
    const dac_vector back = dac_vector::deserialize(bytes.data(), bytes.size(), pos);
    CHECK(pos == bytes.size());
    CHECK(back.decode() == values);
}
