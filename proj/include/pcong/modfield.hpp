#pragma once

// Exact arithmetic in the prime field GF(ell) for odd primes ell.
// FieldElement is a plain value type carrying (residue, modulus); the
// PrimeField context validates primality once so elements never have to.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcong {

// Raised when a solver or builder exceeds a configured size budget.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what)
        : std::runtime_error(what) {}
};

// ---- raw kernels on canonical residues -------------------------------------
// Callers guarantee a, b < ell and ell < 2^31, so products fit in 64 bits.

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t ell) {
    std::uint64_t s = a + b;
    return s >= ell ? s - ell : s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t ell) {
    return a >= b ? a - b : a + ell - b;
}

inline std::uint64_t mod_neg(std::uint64_t a, std::uint64_t ell) {
    return a == 0 ? 0 : ell - a;
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t ell) {
    return (a * b) % ell;
}

inline std::uint64_t mod_reduce(std::int64_t v, std::uint64_t ell) {
    std::int64_t m = static_cast<std::int64_t>(ell);
    std::int64_t r = v % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t ell);

// Extended Euclid; throws std::domain_error for a == 0 (or a non-unit,
// which cannot happen for prime ell).
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t ell);

// Deterministic trial division; intended range is ell up to ~10^6 but any
// 63-bit input is handled.
bool is_prime(std::uint64_t n);

// ---- FieldElement -----------------------------------------------------------

class FieldElement {
public:
    // Default-constructed elements belong to no field; any arithmetic on
    // them throws. Needed so containers of elements stay usable.
    FieldElement() : v_(0), ell_(0) {}

    FieldElement(std::int64_t value, std::uint64_t ell)
        : v_(mod_reduce(value, check_modulus(ell))), ell_(ell) {}

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return ell_; }
    bool is_zero() const { return v_ == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        same_field(a, b);
        return FieldElement(mod_add(a.v_, b.v_, a.ell_), a.ell_, raw_tag{});
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        same_field(a, b);
        return FieldElement(mod_sub(a.v_, b.v_, a.ell_), a.ell_, raw_tag{});
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        same_field(a, b);
        return FieldElement(mod_mul(a.v_, b.v_, a.ell_), a.ell_, raw_tag{});
    }
    FieldElement operator-() const {
        require_bound();
        return FieldElement(mod_neg(v_, ell_), ell_, raw_tag{});
    }
    FieldElement& operator+=(FieldElement o) { return *this = *this + o; }
    FieldElement& operator-=(FieldElement o) { return *this = *this - o; }
    FieldElement& operator*=(FieldElement o) { return *this = *this * o; }

    friend bool operator==(FieldElement a, FieldElement b) {
        return a.v_ == b.v_ && a.ell_ == b.ell_;
    }
    friend bool operator!=(FieldElement a, FieldElement b) { return !(a == b); }

    friend FieldElement inverse(FieldElement a) {
        a.require_bound();
        if (a.v_ == 0) throw std::domain_error("inverse of zero in GF(ell)");
        return FieldElement(mod_inv(a.v_, a.ell_), a.ell_, raw_tag{});
    }

    friend FieldElement pow(FieldElement a, std::uint64_t e) {
        a.require_bound();
        return FieldElement(mod_pow(a.v_, e, a.ell_), a.ell_, raw_tag{});
    }

private:
    struct raw_tag {};
    FieldElement(std::uint64_t v, std::uint64_t ell, raw_tag) : v_(v), ell_(ell) {}

    static std::uint64_t check_modulus(std::uint64_t ell) {
        if (ell < 2) throw std::invalid_argument("FieldElement: modulus must be >= 2");
        return ell;
    }
    void require_bound() const {
        if (ell_ == 0) throw std::invalid_argument("FieldElement: unbound element");
    }
    static void same_field(FieldElement a, FieldElement b) {
        a.require_bound();
        b.require_bound();
        if (a.ell_ != b.ell_)
            throw std::invalid_argument("FieldElement: modulus mismatch ("
                                        + std::to_string(a.ell_) + " vs "
                                        + std::to_string(b.ell_) + ")");
    }

    std::uint64_t v_;
    std::uint64_t ell_;
};

// ---- PrimeField --------------------------------------------------------------

// Context object: checks once that ell is an odd prime (and small enough
// that products of residues cannot overflow 64-bit intermediates).
class PrimeField {
public:
    explicit PrimeField(std::uint64_t ell);

    std::uint64_t modulus() const { return ell_; }
    FieldElement element(std::int64_t v) const { return FieldElement(v, ell_); }
    FieldElement zero() const { return FieldElement(0, ell_); }
    FieldElement one() const { return FieldElement(1, ell_); }

private:
    std::uint64_t ell_;
};

} // namespace pcong
