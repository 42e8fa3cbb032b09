#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncaas/gf.hpp"
#include "ncaas/random.hpp"

using namespace ncaas;
using gf::FieldSpec;

namespace {

// Independent oracle: schoolbook carry-less multiply, then reduce by
// the field polynomial. Deliberately shares no code with the tables.
uint8_t slow_mul(unsigned a, unsigned b, unsigned bits, unsigned poly) {
    if (bits == 1) return static_cast<uint8_t>(a & b);
    unsigned r = 0;
    for (unsigned i = 0; i < bits; ++i)
        if (b >> i & 1) r ^= a << i;
    for (int i = static_cast<int>(2 * bits) - 2; i >= static_cast<int>(bits); --i)
        if (r >> i & 1) r ^= poly << (i - bits);
    return static_cast<uint8_t>(r);
}

struct FieldCase {
    FieldSpec f;
    unsigned poly;
};

const FieldCase kFields[] = {
    {FieldSpec::of(2), 0x3},
    {FieldSpec::of(16), 0x13},
    {FieldSpec::of(256), 0x11B},
};

} // namespace

TEST_CASE("FieldSpec::of accepts exactly 2, 16, 256") {
    CHECK(FieldSpec::of(2).bits_per_element == 1);
    CHECK(FieldSpec::of(16).bits_per_element == 4);
    CHECK(FieldSpec::of(256).bits_per_element == 8);
    CHECK_THROWS_AS(FieldSpec::of(8), Error);
    CHECK_THROWS_AS(FieldSpec::of(0), Error);
    CHECK_THROWS_AS(FieldSpec::of(512), Error);
}

TEST_CASE("known products") {
    CHECK(gf::mul(0x57, 0x83, FieldSpec::of(256)) == 0xC1);
    CHECK(gf::mul(0xFF, 0xFF, FieldSpec::of(256)) == 0x13);
    CHECK(gf::mul(0x7, 0xB, FieldSpec::of(16)) == 0x4);
    CHECK(gf::mul(0xF, 0xF, FieldSpec::of(16)) == 0xA);
    CHECK(gf::mul(1, 1, FieldSpec::of(2)) == 1);
    CHECK(gf::inv(0x53, FieldSpec::of(256)) == 0xCA);
}

TEST_CASE("mul matches the schoolbook oracle exhaustively") {
    for (const auto& [f, poly] : kFields)
        for (unsigned a = 0; a < f.order; ++a)
            for (unsigned b = 0; b < f.order; ++b)
                CHECK(gf::mul(static_cast<uint8_t>(a), static_cast<uint8_t>(b), f) ==
                      slow_mul(a, b, f.bits_per_element, poly));
}

TEST_CASE("inverse is exhaustive and exact") {
    for (const auto& [f, poly] : kFields) {
        CHECK_THROWS_AS(gf::inv(0, f), Error);
        for (unsigned a = 1; a < f.order; ++a) {
            const uint8_t ia = gf::inv(static_cast<uint8_t>(a), f);
            CHECK(gf::mul(static_cast<uint8_t>(a), ia, f) == 1);
        }
    }
}

TEST_CASE("field axioms hold on sampled triples") {
    SplitMix64 rng(42);
    for (const auto& [f, poly] : kFields) {
        for (int i = 0; i < 10000; ++i) {
            const uint8_t a = rng.next_element(f.order);
            const uint8_t b = rng.next_element(f.order);
            const uint8_t c = rng.next_element(f.order);
            CHECK(gf::add(a, b, f) == gf::add(b, a, f));
            CHECK(gf::add(a, a, f) == 0); // characteristic 2
            CHECK(gf::mul(a, b, f) == gf::mul(b, a, f));
            CHECK(gf::mul(gf::mul(a, b, f), c, f) == gf::mul(a, gf::mul(b, c, f), f));
            CHECK(gf::mul(a, gf::add(b, c, f), f) ==
                  gf::add(gf::mul(a, b, f), gf::mul(a, c, f), f));
            CHECK(gf::mul(a, 1, f) == a);
            CHECK(gf::mul(a, 0, f) == 0);
        }
    }
}

TEST_CASE("axpy accumulates c * src into dest") {
    const FieldSpec f = FieldSpec::of(256);
    std::vector<uint8_t> dest{1, 2, 3, 4};
    const std::vector<uint8_t> src{0x10, 0x20, 0x30, 0x40};
    gf::axpy(dest, src, 0x02, f);
    for (size_t i = 0; i < dest.size(); ++i)
        CHECK(dest[i] == gf::add(static_cast<uint8_t>(i + 1),
                                 gf::mul(src[i], 0x02, f), f));

    std::vector<uint8_t> unchanged{9, 9};
    gf::axpy(unchanged, std::vector<uint8_t>{5, 5}, 0, f);
    CHECK(unchanged == std::vector<uint8_t>{9, 9});
}

TEST_CASE("scale multiplies in place") {
    const FieldSpec f = FieldSpec::of(16);
    std::vector<uint8_t> v{0x1, 0x7, 0xF};
    gf::scale(v, 0xB, f);
    CHECK(v == std::vector<uint8_t>{0xB, gf::mul(0x7, 0xB, f), gf::mul(0xF, 0xB, f)});
}

TEST_CASE("pack_elements golden layouts") {
    const std::vector<uint8_t> bits{1, 0, 1, 1, 0, 0, 1, 1, 1};
    const auto packed2 = gf::pack_elements(bits, FieldSpec::of(2));
    CHECK(packed2 == std::vector<uint8_t>{0xB3, 0x80});

    const std::vector<uint8_t> nibbles{0xA, 0x3, 0xF};
    const auto packed16 = gf::pack_elements(nibbles, FieldSpec::of(16));
    CHECK(packed16 == std::vector<uint8_t>{0xA3, 0xF0});

    const std::vector<uint8_t> bytes{0x12, 0x34};
    CHECK(gf::pack_elements(bytes, FieldSpec::of(256)) == bytes);
}

TEST_CASE("pack/unpack roundtrip over random vectors") {
    SplitMix64 rng(7);
    for (const auto& [f, poly] : kFields) {
        for (int trial = 0; trial < 200; ++trial) {
            const size_t n = 1 + rng.next_u64() % 300;
            std::vector<uint8_t> elems(n);
            for (auto& e : elems) e = rng.next_element(f.order);
            const auto packed = gf::pack_elements(elems, f);
            CHECK(packed.size() == gf::packed_size(n, f));
            CHECK(gf::unpack_elements(packed, n, f) == elems);
        }
    }
}
