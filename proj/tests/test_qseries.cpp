#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcong/qseries.hpp"

using namespace pcong;

namespace {

TruncatedSeries from_ints(std::uint64_t ell, const std::vector<std::int64_t>& c) {
    TruncatedSeries s(ell, c.size() - 1);
    for (std::size_t k = 0; k < c.size(); ++k) s.set_coeff(k, c[k]);
    return s;
}

} // namespace

TEST_CASE("euler product coefficients") {
    // 1 - q - q^2 + q^5 + q^7 - q^12 - ...
    const std::vector<std::int64_t> expected{1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1};
    for (std::uint64_t ell : {5ull, 7ull, 11ull, 13ull, 17ull})
        CHECK(euler_product(12, ell) == from_ints(ell, expected));
    CHECK(euler_product(0, 7) == TruncatedSeries::constant(1, 7, 0));
    CHECK(euler_product(30, 13).coeff(2) == FieldElement(-1, 13));
}

TEST_CASE("pentagonal series") {
    TruncatedSeries s = pentagonal_series(15, 23);
    std::vector<std::int64_t> expected(16, 0);
    expected[0] = 1; expected[1] = -1; expected[2] = -1; expected[5] = 1;
    expected[7] = 1; expected[12] = -1; expected[15] = -1;
    CHECK(s == from_ints(23, expected));
    CHECK(pentagonal_series(0, 11) == TruncatedSeries::constant(1, 11, 0));
    CHECK(pentagonal_series(200, 11) == euler_product(200, 11));
}

TEST_CASE("jacobi cube series") {
    TruncatedSeries s = jacobi_cube_series(10, 23);
    std::vector<std::int64_t> expected(11, 0);
    expected[0] = 1; expected[1] = -3; expected[3] = 5; expected[6] = -7; expected[10] = 9;
    CHECK(s == from_ints(23, expected));
    CHECK(jacobi_cube_series(0, 5) == TruncatedSeries::constant(1, 5, 0));
    CHECK(jacobi_cube_series(200, 11) == power(euler_product(200, 11), 3));
}

TEST_CASE("series identity sweep") {
    for (std::uint64_t ell : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        const std::size_t n = 300;
        TruncatedSeries e = euler_product(n, ell);
        CHECK(pentagonal_series(n, ell) == e);
        CHECK(jacobi_cube_series(n, ell) == power(e, 3));
        // Frobenius: E(q)^ell == E(q^ell)
        CHECK(power(e, ell) == dilate(e, ell));
    }
}

TEST_CASE("power basics") {
    TruncatedSeries e = euler_product(50, 7);
    CHECK(power(e, 1) == e);
    CHECK(power(e, 0) == TruncatedSeries::constant(1, 7, 50));
    // no exponent congruent to 5 mod 7 occurs in (E^3)^2
    TruncatedSeries j2 = power(jacobi_cube_series(50, 7), 2);
    CHECK(residue_component(j2, 5).is_zero());
    CHECK(j2.coeff(5) == FieldElement(0, 7));
}

TEST_CASE("inverse") {
    // 1/E(q) mod 13 carries p(n): 1, 1, 2, 3, 5, 7, 11
    TruncatedSeries p = inverse(euler_product(10, 13));
    const std::vector<std::int64_t> pn{1, 1, 2, 3, 5, 7, 11};
    for (std::size_t n = 0; n < pn.size(); ++n)
        CHECK(p.coeff(n) == FieldElement(pn[n], 13));

    TruncatedSeries one = TruncatedSeries::constant(1, 11, 20);
    CHECK(inverse(one) == one);

    TruncatedSeries zero_const(7, 5);
    CHECK_THROWS_AS(inverse(zero_const), std::domain_error);

    // s * inverse(s) == 1 and inverse is an involution, for random sparse
    // series with unit constant term
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t ell = (i % 2) ? 11 : 19;
        TruncatedSeries s(ell, 60);
        s.set_coeff(0, 1 + static_cast<std::int64_t>(rng() % (ell - 1)));
        for (int t = 0; t < 8; ++t)
            s.set_coeff(1 + rng() % 60, static_cast<std::int64_t>(rng() % ell));
        TruncatedSeries inv = inverse(s);
        CHECK(s * inv == TruncatedSeries::constant(1, ell, 60));
        CHECK(inverse(inv) == s);
    }
}

TEST_CASE("p_minus_a") {
    CHECK(p_minus_a(1, 10, 13).coeff(4) == FieldElement(5, 13));
    CHECK(p_minus_a(1, 10, 13).coeff(0) == FieldElement(1, 13));
    TruncatedSeries pm2 = p_minus_a(2, 10, 5);
    for (std::size_t k : {2, 3, 4}) CHECK(pm2.coeff(k) == FieldElement(0, 5));
    CHECK_THROWS_AS(p_minus_a(0, 10, 5), std::invalid_argument);
}

TEST_CASE("p_minus_a against the exact big-integer oracle") {
    for (std::uint64_t a = 1; a <= 5; ++a) {
        auto exact = pcong::testing::exact_p_minus_a(a, 60);
        for (std::uint64_t ell : {5ull, 7ull, 11ull, 13ull}) {
            TruncatedSeries s = p_minus_a(a, 60, ell);
            for (std::size_t n = 0; n <= 60; ++n) {
                mpz_class m = exact[n] % static_cast<unsigned long>(ell);
                CHECK(s.coeff(n).value() == m.get_ui());
            }
        }
    }
}

TEST_CASE("residue components") {
    TruncatedSeries cube = jacobi_cube_series(120, 11);
    CHECK(residue_component(cube, 2).is_zero());   // 2 is not in Jset(11)
    TruncatedSeries e = euler_product(120, 11);
    CHECK(residue_component(e, 3).is_zero());      // 3 is not in Eset(11)

    // components are supported on their class and sum back to the series
    TruncatedSeries sum(11, 120);
    for (std::uint64_t i = 0; i < 11; ++i) {
        TruncatedSeries comp = residue_component(cube, i);
        for (std::size_t k = 0; k <= 120; ++k)
            if (k % 11 != i) CHECK(comp.coeff(k).is_zero());
        sum = sum + comp;
    }
    CHECK(sum == cube);
    CHECK_THROWS_AS(residue_component(cube, 11), std::invalid_argument);
}

TEST_CASE("arithmetic progression slices") {
    auto all_zero = [](const std::vector<FieldElement>& v) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    };
    CHECK(all_zero(arith_progression_slice(p_minus_a(1, 100, 5), 4)));
    CHECK(all_zero(arith_progression_slice(p_minus_a(1, 100, 11), 6)));
    CHECK_FALSE(all_zero(arith_progression_slice(p_minus_a(1, 100, 5), 3)));

    auto ones = arith_progression_slice(TruncatedSeries::constant(1, 5, 20), 0);
    CHECK(ones.size() == 5);
    CHECK(ones[0] == FieldElement(1, 5));
    for (std::size_t i = 1; i < ones.size(); ++i) CHECK(ones[i].is_zero());
}

TEST_CASE("series operand checks") {
    TruncatedSeries a(5, 10), b(7, 10), c(5, 12);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CHECK_THROWS_AS(a + c, std::invalid_argument);
    CHECK_THROWS_AS(dilate(a, 0), std::invalid_argument);
}
