#include "pcong/qseries.hpp"

namespace pcong {

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("TruncatedSeries: modulus mismatch");
    if (a.order() != b.order())
        throw std::invalid_argument("TruncatedSeries: truncation order mismatch");
}

} // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    TruncatedSeries r(a.modulus(), a.order());
    for (std::size_t k = 0; k <= a.order(); ++k)
        r.c_[k] = mod_add(a.c_[k], b.c_[k], a.ell_);
    return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    TruncatedSeries r(a.modulus(), a.order());
    for (std::size_t k = 0; k <= a.order(); ++k)
        r.c_[k] = mod_sub(a.c_[k], b.c_[k], a.ell_);
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    const std::size_t n = a.order();
    const std::uint64_t ell = a.ell_;
    TruncatedSeries r(ell, n);
    for (std::size_t i = 0; i <= n; ++i) {
        const std::uint64_t ai = a.c_[i];
        if (!ai) continue;
        std::uint64_t acc;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (!b.c_[j]) continue;
            acc = r.c_[i + j] + ai * b.c_[j];
            r.c_[i + j] = acc % ell;
        }
    }
    return r;
}

TruncatedSeries euler_product(std::size_t order, std::uint64_t ell) {
    TruncatedSeries s = TruncatedSeries::constant(1, ell, order);
    auto& c = s.raw();
    // multiply by (1 - q^i) in place; factors with i > order cannot matter
    for (std::size_t i = 1; i <= order; ++i) {
        for (std::size_t k = order; k >= i; --k) {
            c[k] = mod_sub(c[k], c[k - i], ell);
            if (k == i) break;
        }
    }
    return s;
}

TruncatedSeries pentagonal_series(std::size_t order, std::uint64_t ell) {
    TruncatedSeries s(ell, order);
    s.set_coeff(0, 1);
    for (std::uint64_t n = 1;; ++n) {
        std::uint64_t g1 = n * (3 * n - 1) / 2;
        std::uint64_t g2 = n * (3 * n + 1) / 2;
        if (g1 > order && g2 > order) break;
        std::int64_t sign = (n % 2 == 0) ? 1 : -1;
        if (g1 <= order) s.set_coeff(g1, mod_reduce(sign, ell) + s.raw()[g1]);
        if (g2 <= order) s.set_coeff(g2, mod_reduce(sign, ell) + s.raw()[g2]);
    }
    return s;
}

TruncatedSeries jacobi_cube_series(std::size_t order, std::uint64_t ell) {
    TruncatedSeries s(ell, order);
    for (std::uint64_t n = 0;; ++n) {
        std::uint64_t t = n * (n + 1) / 2;
        if (t > order) break;
        std::int64_t v = static_cast<std::int64_t>(2 * n + 1);
        if (n % 2 == 1) v = -v;
        s.set_coeff(t, v + static_cast<std::int64_t>(s.raw()[t]));
    }
    return s;
}

TruncatedSeries power(const TruncatedSeries& s, std::uint64_t e) {
    TruncatedSeries result = TruncatedSeries::constant(1, s.modulus(), s.order());
    TruncatedSeries base = s;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

TruncatedSeries inverse(const TruncatedSeries& s) {
    const std::uint64_t ell = s.modulus();
    const std::size_t n = s.order();
    const auto& a = s.raw();
    if (a[0] == 0)
        throw std::domain_error("TruncatedSeries::inverse: constant term is zero");
    const std::uint64_t a0inv = mod_inv(a[0], ell);
    TruncatedSeries r(ell, n);
    auto& b = r.raw();
    b[0] = a0inv;
    for (std::size_t k = 1; k <= n; ++k) {
        std::uint64_t acc = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (a[j] && b[k - j]) acc = (acc + a[j] * b[k - j]) % ell;
        }
        b[k] = mod_mul(mod_neg(acc, ell), a0inv, ell);
    }
    return r;
}

TruncatedSeries dilate(const TruncatedSeries& s, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("dilate: k must be positive");
    TruncatedSeries r(s.modulus(), s.order());
    for (std::size_t i = 0; i * k <= s.order(); ++i)
        r.raw()[i * k] = s.raw()[i];
    return r;
}

TruncatedSeries p_minus_a(std::uint64_t a, std::size_t order, std::uint64_t ell) {
    if (a == 0) throw std::invalid_argument("p_minus_a: a must be >= 1");
    return power(inverse(euler_product(order, ell)), a);
}

TruncatedSeries residue_component(const TruncatedSeries& s, std::uint64_t i) {
    const std::uint64_t ell = s.modulus();
    if (i >= ell) throw std::invalid_argument("residue_component: residue out of range");
    TruncatedSeries r(ell, s.order());
    for (std::size_t k = i; k <= s.order(); k += ell)
        r.raw()[k] = s.raw()[k];
    return r;
}

std::vector<FieldElement> arith_progression_slice(const TruncatedSeries& s, std::uint64_t r) {
    const std::uint64_t ell = s.modulus();
    if (r >= ell) throw std::invalid_argument("arith_progression_slice: residue out of range");
    std::vector<FieldElement> out;
    for (std::size_t k = r; k <= s.order(); k += ell)
        out.push_back(s.coeff(k));
    return out;
}

} // namespace pcong
