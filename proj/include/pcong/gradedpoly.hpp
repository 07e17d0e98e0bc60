#pragma once

// Sparse multivariate polynomials over GF(ell) in the variables
// {J_i : i in Jset(ell)}. Every monomial carries a t-grade: sum of i*e_i
// mod ell. The auxiliary variable t is never materialized; grades add mod
// ell under multiplication, which is exactly reduction mod t^ell - 1.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pcong/modfield.hpp"
#include "pcong/qseries.hpp"

namespace pcong {

// Dense exponent vector over the polynomial's (small, sorted) variable list.
using Exponents = std::vector<std::uint32_t>;

struct GradedMonomial {
    Exponents exponents;         // size = number of variables
    std::uint64_t coefficient;   // canonical nonzero residue mod ell
};

// a < b in graded reverse lexicographic order. Variables are ordered by
// position in the variable list (earlier position = bigger variable).
bool grevlex_less(const Exponents& a, const Exponents& b);

class GradedPolynomial {
public:
    GradedPolynomial() = default;
    // zero polynomial over the given ring
    GradedPolynomial(std::uint64_t ell, std::vector<std::uint32_t> variables);

    // Merges duplicates, drops zeros, sorts into canonical (descending
    // grevlex) order.
    static GradedPolynomial from_terms(std::uint64_t ell,
                                       std::vector<std::uint32_t> variables,
                                       std::vector<GradedMonomial> terms);

    std::uint64_t modulus() const { return ell_; }
    const std::vector<std::uint32_t>& variables() const { return vars_; }
    const std::vector<GradedMonomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::uint64_t total_degree(const Exponents& e) const;
    std::uint64_t grade(const Exponents& e) const;

    // Degree shared by all monomials, if any (zero polynomial -> nullopt).
    std::optional<std::uint64_t> homogeneous_degree() const;
    // Grade shared by all monomials, if any.
    std::optional<std::uint64_t> homogeneous_grade() const;

    // Leading (largest) monomial under grevlex; throws on zero.
    const GradedMonomial& leading() const;

    friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
        return a.ell_ == b.ell_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const GradedPolynomial& a, const GradedPolynomial& b) {
        return !(a == b);
    }

    friend GradedPolynomial operator+(const GradedPolynomial& a, const GradedPolynomial& b);
    friend GradedPolynomial operator-(const GradedPolynomial& a, const GradedPolynomial& b);
    friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b);

    GradedPolynomial scaled(FieldElement c) const;
    // this * c * X^e
    GradedPolynomial times_monomial(std::uint64_t c, const Exponents& e) const;

private:
    std::uint64_t ell_ = 0;
    std::vector<std::uint32_t> vars_;
    std::vector<GradedMonomial> terms_;  // canonical: descending grevlex
};

inline bool operator==(const GradedMonomial& a, const GradedMonomial& b) {
    return a.exponents == b.exponents && a.coefficient == b.coefficient;
}

// The linear polynomial sum_{i in Jset(ell)} J_i (monomial J_i has grade i).
GradedPolynomial generator(std::uint64_t ell);

// Binary exponentiation; max_terms = 0 means unlimited, otherwise a
// resource_limit_error is thrown as soon as an intermediate exceeds it.
GradedPolynomial power(const GradedPolynomial& p, std::uint64_t e, std::size_t max_terms = 0);

// Caches powers of generator(ell) across calls. Thread-safe: concurrent
// readers, serialized writers; returned references stay valid for the
// cache's lifetime.
class GeneratorPowerCache {
public:
    explicit GeneratorPowerCache(std::uint64_t ell);
    // Shares repeated-squaring intermediates across requests. max_terms
    // bounds new computation only; an already-cached power is returned as is.
    const GradedPolynomial& power(std::uint64_t e, std::size_t max_terms = 0);
    std::uint64_t modulus() const { return ell_; }

private:
    std::uint64_t ell_;
    std::mutex mu_;
    std::map<std::uint64_t, GradedPolynomial> memo_;
};

// Sub-polynomial of monomials whose grade is r mod ell.
GradedPolynomial grade_component(const GradedPolynomial& p, std::uint64_t r);

// Value of p at the point; every variable of p must be assigned.
FieldElement evaluate(const GradedPolynomial& p,
                      const std::map<std::uint32_t, FieldElement>& point);

// Replace each J_i by a truncated series and evaluate.
TruncatedSeries substitute_series(const GradedPolynomial& p,
                                  const std::map<std::uint32_t, TruncatedSeries>& assignment);

// All grade components of generator(ell)^e evaluated at a point, computed as
// a cyclic power in GF(ell)[t]/(t^ell - 1). Index m of the result equals
// evaluate(grade_component(power(generator(ell), e), m), point).
std::vector<FieldElement> power_components_at(const std::map<std::uint32_t, FieldElement>& point,
                                              std::uint64_t ell, std::uint64_t e);

// Canonical rendering, e.g. "3*J0^2*J1 + 10*J3*J6^2"; zero renders as "0".
std::string to_string(const GradedPolynomial& p);

// Inverse of to_string for polynomials over the given ring.
GradedPolynomial parse_polynomial(const std::string& text, std::uint64_t ell,
                                  std::vector<std::uint32_t> variables);

// Monomial enumeration helpers (shared by the ideal-membership solvers).
// All exponent vectors of the given total degree, in descending grevlex
// order; if grade_filter is set, only those with that grade mod ell.
std::vector<Exponents> monomials_of_degree(std::size_t nvars, std::uint64_t degree,
                                           const std::vector<std::uint32_t>& variables,
                                           std::uint64_t ell,
                                           std::optional<std::uint64_t> grade_filter);

// Number of monomials of the given degree in nvars variables (no grade
// filter); saturates at the cap instead of overflowing.
std::uint64_t count_monomials(std::size_t nvars, std::uint64_t degree,
                              std::uint64_t cap = UINT64_MAX);

} // namespace pcong
