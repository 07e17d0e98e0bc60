#include "pcong/modfield.hpp"

namespace pcong {

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t ell) {
    std::uint64_t r = 1 % ell;
    a %= ell;
    while (e) {
        if (e & 1) r = mod_mul(r, a, ell);
        a = mod_mul(a, a, ell);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t ell) {
    if (a % ell == 0) throw std::domain_error("mod_inv: zero has no inverse");
    // extended Euclid on (a, ell); track only the coefficient of a
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(ell);
    std::int64_t new_r = static_cast<std::int64_t>(a % ell);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t; new_t = tmp;
        tmp = r - q * new_r;
        r = new_r; new_r = tmp;
    }
    if (r != 1) throw std::domain_error("mod_inv: argument is not a unit");
    return mod_reduce(t, ell);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t ell) : ell_(ell) {
    if (ell == 2)
        throw std::invalid_argument("PrimeField: characteristic 2 is not supported");
    if (ell >= (std::uint64_t{1} << 31))
        throw std::invalid_argument("PrimeField: modulus too large (must fit in 31 bits)");
    if (!is_prime(ell))
        throw std::invalid_argument("PrimeField: " + std::to_string(ell) + " is not prime");
}

} // namespace pcong
