#include <doctest.h>

#include <random>

#include "pcong/modfield.hpp"

using namespace pcong;

TEST_CASE("field arithmetic basics") {
    PrimeField f11(11);
    CHECK(f11.element(3) * f11.element(4) == f11.one());
    CHECK(f11.element(7) + f11.zero() == f11.element(7));
    CHECK(f11.element(-1) == f11.element(10));
    CHECK((-f11.element(4)) == f11.element(7));
    CHECK(f11.element(5) - f11.element(9) == f11.element(7));

    PrimeField f17(17);
    CHECK(f17.element(3) * f17.element(6) == f17.one());
}

TEST_CASE("inverse") {
    CHECK(inverse(FieldElement(3, 11)) == FieldElement(4, 11));
    CHECK(inverse(FieldElement(1, 11)) == FieldElement(1, 11));
    CHECK(inverse(FieldElement(3, 7)) == FieldElement(5, 7));
    CHECK_THROWS_AS(inverse(FieldElement(0, 7)), std::domain_error);

    // exhaustive over every prime field up to 100
    for (std::uint64_t ell = 3; ell <= 100; ++ell) {
        if (!is_prime(ell)) continue;
        for (std::uint64_t x = 1; x < ell; ++x) {
            FieldElement e(static_cast<std::int64_t>(x), ell);
            CHECK(e * inverse(e) == FieldElement(1, ell));
        }
    }
}

TEST_CASE("pow") {
    CHECK(pow(FieldElement(0, 7), 0) == FieldElement(1, 7));
    CHECK(pow(FieldElement(2, 11), 10) == FieldElement(1, 11));
    CHECK(pow(FieldElement(2, 11), 5) == FieldElement(10, 11));
    // Fermat for every nonzero element of a few fields
    for (std::uint64_t ell : {5ull, 13ull, 23ull})
        for (std::uint64_t x = 1; x < ell; ++x)
            CHECK(pow(FieldElement(static_cast<std::int64_t>(x), ell), ell - 1) ==
                  FieldElement(1, ell));
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(7);
    for (std::uint64_t ell : {5ull, 11ull, 101ull, 99991ull}) {
        for (int i = 0; i < 200; ++i) {
            FieldElement a(static_cast<std::int64_t>(rng() % ell), ell);
            FieldElement b(static_cast<std::int64_t>(rng() % ell), ell);
            FieldElement c(static_cast<std::int64_t>(rng() % ell), ell);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == FieldElement(0, ell));
        }
    }
}

TEST_CASE("modulus mismatch is a contract violation") {
    FieldElement a(1, 5), b(1, 7);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CHECK_THROWS_AS(a - b, std::invalid_argument);
}

TEST_CASE("prime field context validates the modulus") {
    CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(1000000), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(std::uint64_t{1} << 33), std::invalid_argument);
    CHECK(PrimeField(999983).modulus() == 999983);  // largest prime below 10^6
    CHECK(PrimeField(3).modulus() == 3);
}

TEST_CASE("no overflow near the modulus bound") {
    const std::uint64_t ell = 2147483647;  // 2^31 - 1, prime
    FieldElement big(static_cast<std::int64_t>(ell - 1), ell);
    CHECK(big * big == FieldElement(1, ell));  // (-1)^2
    CHECK(big + big == FieldElement(static_cast<std::int64_t>(ell - 2), ell));
    CHECK(inverse(big) == big);
}
