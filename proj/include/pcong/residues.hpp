#pragma once

// Residue-set combinatorics: Jset(ell), Eset(ell), sumsets, and the derived
// method parameters (alpha, b, c, d).

#include <cstdint>
#include <vector>

#include "pcong/modfield.hpp"

namespace pcong {

struct ResidueSet {
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> members;  // sorted, duplicate-free, in [0, modulus)

    bool contains(std::uint64_t r) const;
};

// {T(n) mod ell : 0 <= n < ell, 2n+1 != 0 mod ell}, T(n) = n(n+1)/2.
// These are the exponent residues supporting E(q)^3 mod ell.
ResidueSet jset(std::uint64_t ell);

// {(3n^2+n)/2 mod ell : 0 <= n < ell}; the exponent residues supporting E(q).
ResidueSet eset(std::uint64_t ell);

ResidueSet complement(const ResidueSet& s);

// {x + y mod ell : x in a, y in b}
ResidueSet sumset(const ResidueSet& a, const ResidueSet& b);

struct MethodParameters {
    std::uint64_t ell = 0;
    std::uint64_t a = 0;
    std::uint64_t alpha = 0;  // smallest multiplier with 3 | (alpha*ell - a) and b >= 1
    std::uint64_t b = 0;      // (alpha*ell - a) / 3
    std::uint64_t c = 0;      // inverse of 3 mod ell
    std::uint64_t d = 0;      // (3c - 1) / ell
};

// Requires ell an odd prime != 3 and a >= 1.
MethodParameters derive_parameters(std::uint64_t a, std::uint64_t ell);

} // namespace pcong
