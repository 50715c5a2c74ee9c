#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "mmm/field.hpp"

using mmm::Field;

TEST_CASE("field construction validates the modulus") {
    CHECK(Field(7).p() == 7);
    CHECK(Field(2).p() == 2);
    CHECK(Field(101).p() == 101);
    CHECK(Field(469762049).p() == 469762049);  // 7 * 2^26 + 1, prime

    CHECK_THROWS_AS(Field(6), std::invalid_argument);    // composite
    CHECK_THROWS_AS(Field(1), std::invalid_argument);    // unit
    CHECK_THROWS_AS(Field(0), std::invalid_argument);
    CHECK_THROWS_AS(Field(-7), std::invalid_argument);
    CHECK_THROWS_AS(Field(std::int64_t{1} << 31), std::invalid_argument);  // too large
    CHECK_THROWS_AS(Field((std::int64_t{1} << 31) + 11), std::invalid_argument);
}

TEST_CASE("basic arithmetic in GF(7)") {
    Field F(7);
    CHECK(F.add(3, 5) == 1);
    CHECK(F.sub(1, 3) == 5);
    CHECK(F.mul(3, 5) == 1);
    CHECK(F.neg(2) == 5);
    CHECK(F.neg(0) == 0);
    CHECK(F.inv(3) == 5);
    CHECK(F.inv(1) == 1);
    CHECK(F.divide(6, 2) == 3);
    CHECK(F.reduce(-1) == 6);
    CHECK(F.reduce(15) == 1);
}

TEST_CASE("inverse of zero is rejected") {
    Field F(101);
    CHECK_THROWS_AS(F.inv(0), std::domain_error);
    CHECK_THROWS_AS(F.divide(5, 0), std::domain_error);
}

TEST_CASE("exhaustive algebraic laws in GF(7)") {
    Field F(7);
    for (std::int64_t a = 0; a < 7; ++a) {
        for (std::int64_t b = 0; b < 7; ++b) {
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.add(a, b) < 7);
            CHECK(F.mul(a, b) < 7);
            CHECK(F.sub(a, b) < 7);
            CHECK(F.add(F.sub(a, b), b) == a);
            for (std::int64_t c = 0; c < 7; ++c) {
                CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            }
        }
    }
}

TEST_CASE("every nonzero element has a working inverse") {
    for (std::int64_t p : {2, 7, 101, 65537}) {
        Field F(p);
        for (std::int64_t a = 1; a < std::min<std::int64_t>(p, 300); ++a) {
            std::int64_t ia = F.inv(a);
            CHECK(ia >= 0);
            CHECK(ia < p);
            CHECK(F.mul(a, ia) == 1);
        }
    }
}

TEST_CASE("products near the modulus bound stay exact") {
    // The largest allowed prime below 2^31; squaring its largest residue must
    // not overflow the 64-bit intermediate.
    Field F(2147483647);
    std::int64_t a = 2147483646;  // = -1 mod p
    CHECK(F.mul(a, a) == 1);
    CHECK(F.inv(a) == a);
}
