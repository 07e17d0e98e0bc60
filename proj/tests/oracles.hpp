#pragma once

// Test-only oracles, deliberately independent of the library's computation
// paths: an exact big-integer partition counter and a naive expansion of
// (sum J_i t^i)^e over GF(ell)[J][t]/(t^ell - 1) by repeated distribution.

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "pcong/gradedpoly.hpp"

namespace pcong::testing {

// p_{-a}(n) for n = 0..n_max as exact integers: dynamic programming over
// part sizes, one pass per color.
std::vector<mpz_class> exact_p_minus_a(std::uint64_t a, std::size_t n_max);

// Naive oracle: coefficient vector in t (length ell) of multivariate maps,
// multiplied out one generator factor at a time, t-exponents wrapped mod ell.
using MonomialMap = std::map<Exponents, std::uint64_t>;
std::vector<MonomialMap> naive_generator_power(std::uint64_t ell, std::uint64_t e);

// Convert one oracle slot into the library representation for comparison.
GradedPolynomial oracle_component_to_poly(std::uint64_t ell, const MonomialMap& slot);

} // namespace pcong::testing
