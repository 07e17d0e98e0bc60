#include "pcong/residues.hpp"

#include <algorithm>
#include <set>

namespace pcong {

bool ResidueSet::contains(std::uint64_t r) const {
    return std::binary_search(members.begin(), members.end(), r);
}

namespace {

void require_odd_prime(std::uint64_t ell) {
    if (ell == 2 || !is_prime(ell))
        throw std::invalid_argument("residue set: modulus must be an odd prime");
}

ResidueSet from_set(std::uint64_t ell, const std::set<std::uint64_t>& vals) {
    ResidueSet s;
    s.modulus = ell;
    s.members.assign(vals.begin(), vals.end());
    return s;
}

} // namespace

ResidueSet jset(std::uint64_t ell) {
    require_odd_prime(ell);
    std::set<std::uint64_t> vals;
    for (std::uint64_t n = 0; n < ell; ++n) {
        if ((2 * n + 1) % ell == 0) continue;
        vals.insert((n * (n + 1) / 2) % ell);
    }
    return from_set(ell, vals);
}

ResidueSet eset(std::uint64_t ell) {
    require_odd_prime(ell);
    std::set<std::uint64_t> vals;
    for (std::uint64_t n = 0; n < ell; ++n)
        vals.insert((3 * n * n + n) / 2 % ell);
    return from_set(ell, vals);
}

ResidueSet complement(const ResidueSet& s) {
    ResidueSet r;
    r.modulus = s.modulus;
    for (std::uint64_t m = 0; m < s.modulus; ++m)
        if (!s.contains(m)) r.members.push_back(m);
    return r;
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
    if (a.modulus != b.modulus)
        throw std::invalid_argument("sumset: modulus mismatch");
    std::set<std::uint64_t> vals;
    for (std::uint64_t x : a.members)
        for (std::uint64_t y : b.members)
            vals.insert((x + y) % a.modulus);
    return from_set(a.modulus, vals);
}

MethodParameters derive_parameters(std::uint64_t a, std::uint64_t ell) {
    if (ell == 3)
        throw std::invalid_argument("derive_parameters: ell = 3 is unsupported (3 has no inverse)");
    require_odd_prime(ell);
    if (a == 0) throw std::invalid_argument("derive_parameters: a must be >= 1");

    MethodParameters p;
    p.ell = ell;
    p.a = a;
    // smallest alpha with 3 | (alpha*ell - a); bumped by 3 until b >= 1
    for (std::uint64_t alpha = 1;; ++alpha) {
        if ((alpha * ell) % 3 != a % 3) continue;
        std::uint64_t num = alpha * ell;
        if (num < a + 3) continue;  // need b = (num - a)/3 >= 1
        p.alpha = alpha;
        p.b = (num - a) / 3;
        break;
    }
    p.c = mod_inv(3, ell);
    p.d = (3 * p.c - 1) / ell;
    return p;
}

} // namespace pcong
