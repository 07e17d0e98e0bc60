#include "pcong/gradedpoly.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "pcong/residues.hpp"

namespace pcong {

bool grevlex_less(const Exponents& a, const Exponents& b) {
    std::uint64_t da = 0, db = 0;
    for (auto x : a) da += x;
    for (auto x : b) db += x;
    if (da != db) return da < db;
    // same degree: a < b iff the last nonzero entry of a-b is positive
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

namespace {

struct ExpHash {
    std::size_t operator()(const Exponents& e) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (std::uint32_t x : e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

void require_same_ring(const GradedPolynomial& a, const GradedPolynomial& b) {
    if (a.modulus() != b.modulus() || a.variables() != b.variables())
        throw std::invalid_argument("GradedPolynomial: incompatible operands");
}

GradedPolynomial from_accumulator(std::uint64_t ell, std::vector<std::uint32_t> vars,
                                  std::unordered_map<Exponents, std::uint64_t, ExpHash>&& acc) {
    std::vector<GradedMonomial> terms;
    terms.reserve(acc.size());
    for (auto& [e, c] : acc) {
        std::uint64_t cc = c % ell;
        if (cc) terms.push_back(GradedMonomial{e, cc});
    }
    return GradedPolynomial::from_terms(ell, std::move(vars), std::move(terms));
}

} // namespace

GradedPolynomial::GradedPolynomial(std::uint64_t ell, std::vector<std::uint32_t> variables)
    : ell_(ell), vars_(std::move(variables)) {
    if (ell < 2) throw std::invalid_argument("GradedPolynomial: bad modulus");
}

GradedPolynomial GradedPolynomial::from_terms(std::uint64_t ell,
                                              std::vector<std::uint32_t> variables,
                                              std::vector<GradedMonomial> terms) {
    GradedPolynomial p(ell, std::move(variables));
    // canonicalize: sort descending, merge equal exponent vectors, drop zeros
    std::sort(terms.begin(), terms.end(), [](const GradedMonomial& x, const GradedMonomial& y) {
        return grevlex_less(y.exponents, x.exponents);
    });
    for (auto& t : terms) {
        if (t.exponents.size() != p.vars_.size())
            throw std::invalid_argument("GradedPolynomial: exponent vector of wrong length");
        std::uint64_t c = t.coefficient % ell;
        if (!c) continue;
        if (!p.terms_.empty() && p.terms_.back().exponents == t.exponents) {
            p.terms_.back().coefficient = mod_add(p.terms_.back().coefficient, c, ell);
            if (p.terms_.back().coefficient == 0) p.terms_.pop_back();
        } else {
            p.terms_.push_back(GradedMonomial{std::move(t.exponents), c});
        }
    }
    return p;
}

std::uint64_t GradedPolynomial::total_degree(const Exponents& e) const {
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

std::uint64_t GradedPolynomial::grade(const Exponents& e) const {
    std::uint64_t g = 0;
    for (std::size_t k = 0; k < e.size(); ++k)
        g = (g + static_cast<std::uint64_t>(vars_[k]) * e[k]) % ell_;
    return g;
}

std::optional<std::uint64_t> GradedPolynomial::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::uint64_t d = total_degree(terms_.front().exponents);
    for (const auto& t : terms_)
        if (total_degree(t.exponents) != d) return std::nullopt;
    return d;
}

std::optional<std::uint64_t> GradedPolynomial::homogeneous_grade() const {
    if (terms_.empty()) return std::nullopt;
    std::uint64_t g = grade(terms_.front().exponents);
    for (const auto& t : terms_)
        if (grade(t.exponents) != g) return std::nullopt;
    return g;
}

const GradedMonomial& GradedPolynomial::leading() const {
    if (terms_.empty()) throw std::domain_error("GradedPolynomial: zero polynomial has no leading term");
    return terms_.front();
}

GradedPolynomial operator+(const GradedPolynomial& a, const GradedPolynomial& b) {
    require_same_ring(a, b);
    std::vector<GradedMonomial> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return GradedPolynomial::from_terms(a.ell_, a.vars_, std::move(terms));
}

GradedPolynomial operator-(const GradedPolynomial& a, const GradedPolynomial& b) {
    require_same_ring(a, b);
    std::vector<GradedMonomial> terms = a.terms_;
    terms.reserve(terms.size() + b.terms_.size());
    for (const auto& t : b.terms_)
        terms.push_back(GradedMonomial{t.exponents, mod_neg(t.coefficient, a.ell_)});
    return GradedPolynomial::from_terms(a.ell_, a.vars_, std::move(terms));
}

namespace detail {

namespace {

struct U64Hash {
    std::size_t operator()(std::uint64_t x) const {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return static_cast<std::size_t>(x ^ (x >> 31));
    }
};

// Fast path: up to 8 variables whose per-lane exponent sums stay below 256
// pack into one u64, so exponent vectors add as a single integer add.
GradedPolynomial mul_packed(const GradedPolynomial& a, const GradedPolynomial& b,
                            std::size_t max_terms) {
    const std::uint64_t ell = a.modulus();
    const std::size_t nvars = a.variables().size();
    const bool square = &a == &b;

    auto pack_terms = [&](const GradedPolynomial& p) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        out.reserve(p.terms().size());
        for (const auto& t : p.terms()) {
            std::uint64_t key = 0;
            for (std::size_t k = 0; k < nvars; ++k)
                key |= static_cast<std::uint64_t>(t.exponents[k]) << (8 * k);
            out.emplace_back(key, t.coefficient);
        }
        return out;
    };
    const auto pa = pack_terms(a);
    const auto pb = square ? std::vector<std::pair<std::uint64_t, std::uint64_t>>{}
                           : pack_terms(b);
    const auto& qb = square ? pa : pb;

    std::unordered_map<std::uint64_t, std::uint64_t, U64Hash> acc;
    acc.reserve(std::min<std::size_t>(pa.size() * qb.size() / 4 + 16, std::size_t{1} << 21));
    auto bump = [&](std::uint64_t key, std::uint64_t val) {
        auto it = acc.find(key);
        if (it == acc.end()) {
            acc.emplace(key, val % ell);
            if (max_terms && acc.size() > max_terms)
                throw resource_limit_error("mul: term count exceeds limit");
        } else {
            it->second = (it->second + val) % ell;
        }
    };
    if (square) {
        // (sum t_i)^2 = sum t_i^2 + 2 * sum_{i<j} t_i t_j
        for (std::size_t i = 0; i < pa.size(); ++i) {
            bump(pa[i].first * 2, pa[i].second * pa[i].second % ell);
            for (std::size_t j = i + 1; j < pa.size(); ++j)
                bump(pa[i].first + pa[j].first, 2 * pa[i].second % ell * pa[j].second);
        }
    } else {
        for (const auto& [ka, ca] : pa)
            for (const auto& [kb, cb] : qb) bump(ka + kb, ca * cb);
    }

    std::vector<GradedMonomial> terms;
    terms.reserve(acc.size());
    for (const auto& [key, c] : acc) {
        const std::uint64_t cc = c % ell;
        if (!cc) continue;
        Exponents e(nvars);
        for (std::size_t k = 0; k < nvars; ++k)
            e[k] = static_cast<std::uint32_t>((key >> (8 * k)) & 0xff);
        terms.push_back(GradedMonomial{std::move(e), cc});
    }
    return GradedPolynomial::from_terms(ell, a.variables(), std::move(terms));
}

} // namespace

GradedPolynomial mul_capped(const GradedPolynomial& a, const GradedPolynomial& b,
                            std::size_t max_terms) {
    require_same_ring(a, b);
    const std::uint64_t ell = a.modulus();
    const std::size_t nvars = a.variables().size();

    if (nvars <= 8 && !a.is_zero() && !b.is_zero()) {
        std::array<std::uint32_t, 8> maxa{}, maxb{};
        for (const auto& t : a.terms())
            for (std::size_t k = 0; k < nvars; ++k) maxa[k] = std::max(maxa[k], t.exponents[k]);
        for (const auto& t : b.terms())
            for (std::size_t k = 0; k < nvars; ++k) maxb[k] = std::max(maxb[k], t.exponents[k]);
        bool packable = true;
        for (std::size_t k = 0; k < nvars; ++k)
            if (maxa[k] + maxb[k] > 255) packable = false;
        if (packable) return mul_packed(a, b, max_terms);
    }

    std::unordered_map<Exponents, std::uint64_t, ExpHash> acc;
    acc.reserve(a.terms().size() + b.terms().size());
    Exponents key(nvars);
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            for (std::size_t k = 0; k < key.size(); ++k)
                key[k] = ta.exponents[k] + tb.exponents[k];
            auto it = acc.find(key);
            if (it == acc.end()) {
                acc.emplace(key, mod_mul(ta.coefficient, tb.coefficient, ell));
                if (max_terms && acc.size() > max_terms)
                    throw resource_limit_error("mul: term count exceeds limit");
            } else {
                it->second = (it->second + ta.coefficient * tb.coefficient) % ell;
            }
        }
    }
    return from_accumulator(ell, a.variables(), std::move(acc));
}

} // namespace detail

GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
    return detail::mul_capped(a, b, 0);
}

GradedPolynomial GradedPolynomial::scaled(FieldElement c) const {
    if (c.modulus() != ell_)
        throw std::invalid_argument("GradedPolynomial::scaled: modulus mismatch");
    if (c.is_zero()) return GradedPolynomial(ell_, vars_);
    GradedPolynomial r(ell_, vars_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coefficient = mod_mul(t.coefficient, c.value(), ell_);
    return r;
}

GradedPolynomial GradedPolynomial::times_monomial(std::uint64_t c, const Exponents& e) const {
    c %= ell_;
    if (!c) return GradedPolynomial(ell_, vars_);
    GradedPolynomial r(ell_, vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents ex = t.exponents;
        for (std::size_t k = 0; k < ex.size(); ++k) ex[k] += e[k];
        r.terms_.push_back(GradedMonomial{std::move(ex), mod_mul(t.coefficient, c, ell_)});
    }
    // multiplying by a fixed monomial preserves the term order
    return r;
}

GradedPolynomial generator(std::uint64_t ell) {
    ResidueSet js = jset(ell);
    std::vector<std::uint32_t> vars(js.members.begin(), js.members.end());
    std::vector<GradedMonomial> terms;
    for (std::size_t k = 0; k < vars.size(); ++k) {
        Exponents e(vars.size(), 0);
        e[k] = 1;
        terms.push_back(GradedMonomial{std::move(e), 1});
    }
    return GradedPolynomial::from_terms(ell, std::move(vars), std::move(terms));
}

GradedPolynomial power(const GradedPolynomial& p, std::uint64_t e, std::size_t max_terms) {
    GradedPolynomial result = GradedPolynomial::from_terms(
        p.modulus(), p.variables(),
        {GradedMonomial{Exponents(p.variables().size(), 0), 1}});
    GradedPolynomial base = p;
    while (e) {
        if (e & 1) result = detail::mul_capped(result, base, max_terms);
        e >>= 1;
        if (e) base = detail::mul_capped(base, base, max_terms);
    }
    return result;
}

GeneratorPowerCache::GeneratorPowerCache(std::uint64_t ell) : ell_(ell) {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(1, generator(ell));
}

const GradedPolynomial& GeneratorPowerCache::power(std::uint64_t e, std::size_t max_terms) {
    if (e == 0) throw std::invalid_argument("GeneratorPowerCache: exponent must be >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    // build from cached powers of two
    const GradedPolynomial* acc = nullptr;
    GradedPolynomial tmp;
    for (std::uint64_t bit = 1; bit <= e; bit <<= 1) {
        if (!memo_.count(bit)) {
            const GradedPolynomial& half = memo_.at(bit >> 1);
            memo_.emplace(bit, detail::mul_capped(half, half, max_terms));
        }
        if (e & bit) {
            if (!acc) {
                acc = &memo_.at(bit);
            } else {
                tmp = detail::mul_capped(*acc, memo_.at(bit), max_terms);
                acc = &tmp;
            }
        }
    }
    auto [pos, inserted] = memo_.emplace(e, *acc);
    (void)inserted;
    return pos->second;
}

GradedPolynomial grade_component(const GradedPolynomial& p, std::uint64_t r) {
    if (r >= p.modulus())
        throw std::invalid_argument("grade_component: residue out of range");
    std::vector<GradedMonomial> terms;
    for (const auto& t : p.terms())
        if (p.grade(t.exponents) == r) terms.push_back(t);
    return GradedPolynomial::from_terms(p.modulus(), p.variables(), std::move(terms));
}

FieldElement evaluate(const GradedPolynomial& p,
                      const std::map<std::uint32_t, FieldElement>& point) {
    const std::uint64_t ell = p.modulus();
    std::vector<std::uint64_t> vals(p.variables().size());
    for (std::size_t k = 0; k < p.variables().size(); ++k) {
        auto it = point.find(p.variables()[k]);
        if (it == point.end())
            throw std::invalid_argument("evaluate: missing assignment for J"
                                        + std::to_string(p.variables()[k]));
        if (it->second.modulus() != ell)
            throw std::invalid_argument("evaluate: point modulus mismatch");
        vals[k] = it->second.value();
    }
    std::uint64_t acc = 0;
    for (const auto& t : p.terms()) {
        std::uint64_t v = t.coefficient;
        for (std::size_t k = 0; k < vals.size(); ++k)
            if (t.exponents[k]) v = mod_mul(v, mod_pow(vals[k], t.exponents[k], ell), ell);
        acc = mod_add(acc, v, ell);
    }
    return FieldElement(static_cast<std::int64_t>(acc), ell);
}

TruncatedSeries substitute_series(const GradedPolynomial& p,
                                  const std::map<std::uint32_t, TruncatedSeries>& assignment) {
    const std::uint64_t ell = p.modulus();
    if (assignment.empty()) throw std::invalid_argument("substitute_series: empty assignment");
    const std::size_t order = assignment.begin()->second.order();

    // memoize powers of each variable's series up to its max exponent
    std::vector<std::vector<TruncatedSeries>> pows(p.variables().size());
    for (std::size_t k = 0; k < p.variables().size(); ++k) {
        auto it = assignment.find(p.variables()[k]);
        if (it == assignment.end())
            throw std::invalid_argument("substitute_series: missing assignment for J"
                                        + std::to_string(p.variables()[k]));
        if (it->second.modulus() != ell || it->second.order() != order)
            throw std::invalid_argument("substitute_series: incompatible series");
        std::uint32_t maxe = 0;
        for (const auto& t : p.terms()) maxe = std::max(maxe, t.exponents[k]);
        auto& v = pows[k];
        v.push_back(TruncatedSeries::constant(1, ell, order));
        for (std::uint32_t e = 1; e <= maxe; ++e) v.push_back(v.back() * it->second);
    }

    TruncatedSeries acc(ell, order);
    for (const auto& t : p.terms()) {
        TruncatedSeries term = TruncatedSeries::constant(static_cast<std::int64_t>(t.coefficient), ell, order);
        for (std::size_t k = 0; k < p.variables().size(); ++k)
            if (t.exponents[k]) term = term * pows[k][t.exponents[k]];
        acc = acc + term;
    }
    return acc;
}

std::vector<FieldElement> power_components_at(const std::map<std::uint32_t, FieldElement>& point,
                                              std::uint64_t ell, std::uint64_t e) {
    // work in GF(ell)[t]/(t^ell - 1): index m holds the coefficient of t^m
    std::vector<std::uint64_t> base(ell, 0), result(ell, 0), scratch(ell, 0);
    for (const auto& [i, v] : point) {
        if (i >= ell) throw std::invalid_argument("power_components_at: residue out of range");
        if (v.modulus() != ell) throw std::invalid_argument("power_components_at: modulus mismatch");
        base[i] = mod_add(base[i], v.value(), ell);
    }
    result[0] = 1;
    auto cyc_mul = [&](const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
        std::fill(scratch.begin(), scratch.end(), 0);
        for (std::uint64_t i = 0; i < ell; ++i) {
            if (!x[i]) continue;
            for (std::uint64_t j = 0; j < ell; ++j) {
                if (!y[j]) continue;
                std::uint64_t k = i + j;
                if (k >= ell) k -= ell;
                scratch[k] = (scratch[k] + x[i] * y[j]) % ell;
            }
        }
        return scratch;
    };
    while (e) {
        if (e & 1) result = cyc_mul(result, base);
        e >>= 1;
        if (e) base = cyc_mul(base, base);
    }
    std::vector<FieldElement> out;
    out.reserve(ell);
    for (std::uint64_t m = 0; m < ell; ++m)
        out.push_back(FieldElement(static_cast<std::int64_t>(result[m]), ell));
    return out;
}

std::string to_string(const GradedPolynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first) os << " + ";
        first = false;
        bool any_var = false;
        std::ostringstream vars;
        for (std::size_t k = 0; k < p.variables().size(); ++k) {
            if (!t.exponents[k]) continue;
            if (any_var) vars << "*";
            any_var = true;
            vars << "J" << p.variables()[k];
            if (t.exponents[k] > 1) vars << "^" << t.exponents[k];
        }
        if (!any_var) {
            os << t.coefficient;
        } else if (t.coefficient == 1) {
            os << vars.str();
        } else {
            os << t.coefficient << "*" << vars.str();
        }
    }
    return os.str();
}

GradedPolynomial parse_polynomial(const std::string& text, std::uint64_t ell,
                                  std::vector<std::uint32_t> variables) {
    std::map<std::uint32_t, std::size_t> var_index;
    for (std::size_t k = 0; k < variables.size(); ++k) var_index[variables[k]] = k;

    std::vector<GradedMonomial> terms;
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto parse_uint = [&]() -> std::uint64_t {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("parse_polynomial: expected number at position "
                                                      + std::to_string(start));
        return std::stoull(text.substr(start, pos - start));
    };

    skip_ws();
    bool expect_term = true;
    while (pos < text.size()) {
        skip_ws();
        if (!expect_term) {
            if (text[pos] != '+')
                throw std::invalid_argument("parse_polynomial: expected '+' at position "
                                            + std::to_string(pos));
            ++pos;
            skip_ws();
        }
        expect_term = false;
        std::uint64_t coeff = 1;
        Exponents e(variables.size(), 0);
        bool saw_factor = false;
        bool pending_star = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = parse_uint() % ell;
            saw_factor = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') { ++pos; skip_ws(); pending_star = true; }
        }
        while (pos < text.size() && text[pos] == 'J') {
            ++pos;
            std::uint32_t idx = static_cast<std::uint32_t>(parse_uint());
            auto it = var_index.find(idx);
            if (it == var_index.end())
                throw std::invalid_argument("parse_polynomial: unknown variable J" + std::to_string(idx));
            std::uint32_t exp = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                exp = static_cast<std::uint32_t>(parse_uint());
            }
            e[it->second] += exp;
            saw_factor = true;
            pending_star = false;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') { ++pos; skip_ws(); pending_star = true; }
        }
        if (!saw_factor || pending_star)
            throw std::invalid_argument("parse_polynomial: malformed term at position " + std::to_string(pos));
        terms.push_back(GradedMonomial{std::move(e), coeff});
        skip_ws();
    }
    return GradedPolynomial::from_terms(ell, std::move(variables), std::move(terms));
}

namespace {

void enumerate_monomials(std::size_t nvars, std::uint64_t degree, Exponents& cur,
                         std::size_t at, std::vector<Exponents>& out) {
    if (at + 1 == nvars) {
        cur[at] = static_cast<std::uint32_t>(degree);
        out.push_back(cur);
        cur[at] = 0;
        return;
    }
    for (std::uint64_t e = 0; e <= degree; ++e) {
        cur[at] = static_cast<std::uint32_t>(e);
        enumerate_monomials(nvars, degree - e, cur, at + 1, out);
    }
    cur[at] = 0;
}

} // namespace

std::vector<Exponents> monomials_of_degree(std::size_t nvars, std::uint64_t degree,
                                           const std::vector<std::uint32_t>& variables,
                                           std::uint64_t ell,
                                           std::optional<std::uint64_t> grade_filter) {
    std::vector<Exponents> all;
    if (nvars == 0) return all;
    Exponents cur(nvars, 0);
    enumerate_monomials(nvars, degree, cur, 0, all);
    if (grade_filter) {
        std::vector<Exponents> kept;
        for (auto& e : all) {
            std::uint64_t g = 0;
            for (std::size_t k = 0; k < nvars; ++k)
                g = (g + static_cast<std::uint64_t>(variables[k]) * e[k]) % ell;
            if (g == *grade_filter) kept.push_back(std::move(e));
        }
        all = std::move(kept);
    }
    std::sort(all.begin(), all.end(), [](const Exponents& x, const Exponents& y) {
        return grevlex_less(y, x);  // descending, matching term order
    });
    return all;
}

std::uint64_t count_monomials(std::size_t nvars, std::uint64_t degree, std::uint64_t cap) {
    // C(degree + nvars - 1, nvars - 1), saturating at cap
    if (nvars == 0) return 0;
    std::uint64_t n = degree + nvars - 1;
    std::uint64_t k = nvars - 1;
    if (k > n - k) k = n - k;
    long double acc = 1.0L;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (acc > static_cast<long double>(cap)) return cap;
    }
    return static_cast<std::uint64_t>(acc + 0.5L);
}

} // namespace pcong
