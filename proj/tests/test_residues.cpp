#include <doctest.h>

#include "pcong/residues.hpp"

using namespace pcong;

namespace {

std::vector<std::uint64_t> v(std::initializer_list<std::uint64_t> xs) { return xs; }

} // namespace

TEST_CASE("jset golden values") {
    CHECK(jset(5).members == v({0, 1}));
    CHECK(jset(7).members == v({0, 1, 3}));
    CHECK(jset(11).members == v({0, 1, 3, 6, 10}));
    CHECK(jset(13).members == v({0, 1, 2, 3, 6, 10}));
    CHECK(jset(17).members == v({0, 1, 3, 4, 6, 10, 11, 15}));
    CHECK(complement(jset(11)).members == v({2, 4, 5, 7, 8, 9}));
    CHECK(complement(jset(5)).members == v({2, 3, 4}));
}

TEST_CASE("eset golden values") {
    CHECK(eset(5).members == v({0, 1, 2}));
    CHECK(eset(7).members == v({0, 1, 2, 5}));
    CHECK(eset(11).members == v({0, 1, 2, 4, 5, 7}));
    CHECK(complement(eset(11)).members == v({3, 6, 8, 9, 10}));
    CHECK(eset(17).members == v({0, 1, 2, 5, 6, 7, 9, 12, 15}));
    CHECK(complement(eset(17)).members == v({3, 4, 8, 10, 11, 13, 14, 16}));
    CHECK(complement(eset(13)).members == v({3, 4, 6, 8, 10, 11}));
}

TEST_CASE("set sizes over a long prime range") {
    for (std::uint64_t ell = 3; ell <= 2000; ++ell) {
        if (!is_prime(ell)) continue;
        ResidueSet js = jset(ell);
        CHECK(js.members.size() == (ell - 1) / 2);
        CHECK(js.members.size() <= (ell + 1) / 2);
        // the (6n+1)^2 bijection behind this count needs ell coprime to 6
        if (ell >= 5) CHECK(eset(ell).members.size() == (ell + 1) / 2);
        for (std::size_t i = 1; i < js.members.size(); ++i)
            CHECK(js.members[i - 1] < js.members[i]);
        CHECK(js.members.back() < ell);
    }
}

TEST_CASE("sumset") {
    ResidueSet j7 = jset(7);
    CHECK(sumset(j7, j7).members == v({0, 1, 2, 3, 4, 6}));  // 5 missing
    CHECK_FALSE(sumset(jset(5), jset(5)).contains(4));

    ResidueSet zero{7, {0}};
    CHECK(sumset(zero, j7).members == j7.members);

    ResidueSet other{11, {0}};
    CHECK_THROWS_AS(sumset(other, j7), std::invalid_argument);
}

TEST_CASE("derive_parameters golden values") {
    MethodParameters p = derive_parameters(1, 11);
    CHECK(p.alpha == 2);
    CHECK(p.b == 7);
    CHECK(p.c == 4);
    CHECK(p.d == 1);

    p = derive_parameters(1, 7);
    CHECK(p.alpha == 1);
    CHECK(p.b == 2);
    CHECK(p.c == 5);
    CHECK(p.d == 2);

    p = derive_parameters(3, 17);
    CHECK(p.alpha == 3);
    CHECK(p.b == 16);
    CHECK(p.c == 6);
    CHECK(p.d == 1);

    // b >= 1 forces a bigger alpha when a is large
    p = derive_parameters(13, 5);
    CHECK(p.alpha == 5);
    CHECK(p.b == 4);
}

TEST_CASE("derive_parameters invariants") {
    for (std::uint64_t ell : {5ull, 7ull, 11ull, 13ull, 17ull, 23ull, 47ull}) {
        for (std::uint64_t a = 1; a <= 30; ++a) {
            MethodParameters p = derive_parameters(a, ell);
            CHECK(3 * p.b + a == p.alpha * ell);
            CHECK(p.b >= 1);
            CHECK((3 * p.c) % ell == 1);
            CHECK(p.d * ell == 3 * p.c - 1);
            // alpha minimal: exhaustive rescan
            for (std::uint64_t alt = 1; alt < p.alpha; ++alt) {
                const bool divisible = (alt * ell) % 3 == a % 3;
                const bool positive = alt * ell >= a + 3;
                CHECK_FALSE((divisible && positive));
            }
        }
    }
}

TEST_CASE("rejected moduli") {
    CHECK_THROWS_AS(derive_parameters(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(derive_parameters(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(jset(9), std::invalid_argument);
    CHECK_THROWS_AS(eset(2), std::invalid_argument);
}
