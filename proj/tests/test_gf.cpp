#include "doctest.h"
#include "gf.hpp"

using namespace streamrelay;

namespace {

// independent reference: shift-and-reduce polynomial multiplication
uint32_t ref_mul(uint32_t x, uint32_t y, uint32_t poly, int bits) {
    uint32_t acc = 0;
    while (y != 0) {
        if (y & 1) acc ^= x;
        y >>= 1;
        x <<= 1;
        if (x >> bits) x ^= poly;
    }
    return acc;
}

}  // namespace

TEST_CASE("field constants") {
    const Field& f8 = Field::of(256);
    CHECK(f8.order() == 256);
    CHECK(f8.reduction_poly() == 0x11B);
    const Field& f16 = Field::of(65536);
    CHECK(f16.order() == 65536);
    CHECK(f16.reduction_poly() == 0x1100B);
    CHECK_THROWS_AS(Field::of(512), Error);
}

TEST_CASE("addition is xor") {
    const Field& f = Field::of(256);
    CHECK(f.add(0x00, 0x5A) == 0x5A);
    CHECK(f.add(0x53, 0xCA) == 0x99);
    for (int x = 0; x < 256; ++x) CHECK(f.add(x, x) == 0);
}

TEST_CASE("gf256 multiplication identities and the classic pair") {
    const Field& f = Field::of(256);
    CHECK(f.mul(0x01, 0x7E) == 0x7E);
    CHECK(f.mul(0x00, 0x7E) == 0x00);
    CHECK(f.mul(0x53, 0xCA) == 0x01);
    CHECK(f.inv(0x01) == 0x01);
    CHECK(f.inv(0x53) == 0xCA);
    CHECK_THROWS_AS(f.inv(0x00), Error);
}

TEST_CASE("gf256 tables match polynomial reduction exhaustively") {
    const Field& f = Field::of(256);
    for (uint32_t x = 0; x < 256; ++x)
        for (uint32_t y = 0; y < 256; ++y)
            REQUIRE(f.mul(x, y) == ref_mul(x, y, 0x11B, 8));
}

TEST_CASE("gf256 ring axioms, exhaustive") {
    const Field& f = Field::of(256);
    for (uint32_t x = 0; x < 256; ++x) {
        for (uint32_t y = 0; y < 256; ++y) {
            REQUIRE(f.mul(x, y) == f.mul(y, x));
            for (uint32_t z = 0; z < 256; z += 7) {
                REQUIRE(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
                REQUIRE(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
            }
        }
    }
}

TEST_CASE("gf256 inverses, exhaustive") {
    const Field& f = Field::of(256);
    for (uint32_t x = 1; x < 256; ++x) REQUIRE(f.mul(x, f.inv(x)) == 1);
}

TEST_CASE("gf65536 sampled against polynomial reduction") {
    const Field& f = Field::of(65536);
    uint32_t x = 1;
    for (int i = 0; i < 4000; ++i) {
        const uint32_t y = (x * 40503u + 1) & 0xFFFF;
        REQUIRE(f.mul(x & 0xFFFF, y) == ref_mul(x & 0xFFFF, y, 0x1100B, 16));
        REQUIRE(f.mul(y | 1, f.inv(y | 1)) == 1);
        x = x * 48271u + 11;
        x &= 0xFFFF;
        if (x == 0) x = 1;
    }
    // associativity / distributivity, sampled
    for (uint32_t a = 3; a < 60000; a += 4093) {
        for (uint32_t b = 5; b < 60000; b += 7919) {
            const uint32_t c = (a ^ b) | 1;
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}

TEST_CASE("tagged elements reject mismatched fields") {
    const Elem x{0x53, 256};
    const Elem y{0x1234, 65536};
    CHECK_THROWS_AS(add(x, y), Error);
    CHECK_THROWS_AS(mul(x, y), Error);
    CHECK(mul(Elem{0x53, 256}, Elem{0xCA, 256}).value == 0x01);
    CHECK(inv(Elem{0x53, 256}).value == 0xCA);
    CHECK_THROWS_AS(inv(Elem{0x00, 256}), Error);
}
