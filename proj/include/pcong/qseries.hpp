#pragma once

// Truncated formal power series in q with coefficients in GF(ell).
// Everything is dense: inverses and products of these series fill in, so a
// flat coefficient vector of length N+1 is the right representation.

#include <cstdint>
#include <vector>

#include "pcong/modfield.hpp"

namespace pcong {

class TruncatedSeries {
public:
    // Zero series truncated at q^order.
    TruncatedSeries(std::uint64_t ell, std::size_t order)
        : ell_(ell), c_(order + 1, 0) {
        if (ell < 2) throw std::invalid_argument("TruncatedSeries: bad modulus");
    }

    static TruncatedSeries constant(std::int64_t v, std::uint64_t ell, std::size_t order) {
        TruncatedSeries s(ell, order);
        s.c_[0] = mod_reduce(v, ell);
        return s;
    }

    std::uint64_t modulus() const { return ell_; }
    std::size_t order() const { return c_.size() - 1; }

    FieldElement coeff(std::size_t k) const {
        return FieldElement(static_cast<std::int64_t>(c_.at(k)), ell_);
    }
    void set_coeff(std::size_t k, std::int64_t v) { c_.at(k) = mod_reduce(v, ell_); }

    // Canonical residues, index = exponent. Length order()+1.
    const std::vector<std::uint64_t>& raw() const { return c_; }
    std::vector<std::uint64_t>& raw() { return c_; }

    bool is_zero() const {
        for (std::uint64_t x : c_) if (x) return false;
        return true;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.ell_ == b.ell_ && a.c_ == b.c_;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) {
        return !(a == b);
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    std::uint64_t ell_;
    std::vector<std::uint64_t> c_;
};

// Euler product prod_{i=1..N} (1 - q^i) mod ell, expanded factor by factor.
// Independent of pentagonal_series by construction; the two are cross-checked
// in the test suite.
TruncatedSeries euler_product(std::size_t order, std::uint64_t ell);

// sum_{n=-inf..inf} (-1)^n q^{(3n^2+n)/2} truncated at q^order.
TruncatedSeries pentagonal_series(std::size_t order, std::uint64_t ell);

// sum_{n>=0} (-1)^n (2n+1) q^{(n^2+n)/2} truncated at q^order.
TruncatedSeries jacobi_cube_series(std::size_t order, std::uint64_t ell);

TruncatedSeries power(const TruncatedSeries& s, std::uint64_t e);

// Multiplicative inverse via the standard coefficient recurrence; the
// constant term must be a unit.
TruncatedSeries inverse(const TruncatedSeries& s);

// q -> q^k substitution, same truncation order.
TruncatedSeries dilate(const TruncatedSeries& s, std::uint64_t k);

// Coefficients of 1/E(q)^a mod ell, i.e. sum p_{-a}(n) q^n.
TruncatedSeries p_minus_a(std::uint64_t a, std::size_t order, std::uint64_t ell);

// Sub-series keeping only exponents congruent to i mod s.modulus().
TruncatedSeries residue_component(const TruncatedSeries& s, std::uint64_t i);

// Coefficients of q^{ell*n + r} in order of n, for ell = s.modulus().
std::vector<FieldElement> arith_progression_slice(const TruncatedSeries& s, std::uint64_t r);

} // namespace pcong
