#include "pcong/ideals.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "pcong/linsolve.hpp"
#include "pcong/residues.hpp"

namespace pcong {

namespace {

struct ExpHash {
    std::size_t operator()(const Exponents& e) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint32_t x : e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

void require_ring_match(const GradedPolynomial& pol,
                        const std::map<std::uint64_t, GradedPolynomial>& relations) {
    for (const auto& [m, q] : relations) {
        if (q.modulus() != pol.modulus() || q.variables() != pol.variables())
            throw std::invalid_argument("ideals: relations live in a different ring");
        if (m >= pol.modulus())
            throw std::invalid_argument("ideals: relation index out of range");
    }
}

} // namespace

bool witness_identity_holds(const MembershipWitness& w,
                            const std::map<std::uint64_t, GradedPolynomial>& relations,
                            std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const GradedPolynomial& target = w.target;
    const std::uint64_t ell = target.modulus();
    if (w.power < 1) return fail("power must be >= 1");
    if (target.is_zero()) {
        for (const auto& [m, r] : w.cofactors)
            if (!r.is_zero()) return fail("zero target needs zero cofactors");
        return true;
    }
    auto tdeg = target.homogeneous_degree();
    auto tgrade = target.homogeneous_grade();
    if (!tdeg || !tgrade) return fail("target is not bihomogeneous");

    GradedPolynomial acc(ell, target.variables());
    for (const auto& [m, r] : w.cofactors) {
        auto it = relations.find(m);
        if (it == relations.end()) return fail("cofactor for unknown relation index");
        if (r.is_zero()) continue;
        auto rdeg = r.homogeneous_degree();
        auto rgrade = r.homogeneous_grade();
        auto qdeg = it->second.homogeneous_degree();
        if (!rdeg || !rgrade) return fail("cofactor is not bihomogeneous");
        if (!qdeg) return fail("relation is not degree-homogeneous");
        if (*rdeg + *qdeg != *tdeg)
            return fail("cofactor degree mismatch for m=" + std::to_string(m));
        if ((*rgrade + m) % ell != *tgrade)
            return fail("cofactor grade mismatch for m=" + std::to_string(m));
        acc = acc + r * it->second;
    }
    if (!(acc == target)) return fail("witness identity does not hold");
    return true;
}

namespace {

// Size estimate from degrees alone, so oversized powers of the target are
// never even computed.
bool system_within_budget(std::size_t nvars, std::uint64_t ell, std::uint64_t tdeg,
                          const std::map<std::uint64_t, GradedPolynomial>& relations,
                          std::uint64_t max_system_cells) {
    std::uint64_t est_cols = 0;
    for (const auto& [m, q] : relations) {
        (void)m;
        if (q.is_zero()) continue;
        const std::uint64_t qdeg = *q.homogeneous_degree();
        if (qdeg > tdeg) continue;
        est_cols += count_monomials(nvars, tdeg - qdeg, max_system_cells) / ell + 1;
    }
    const std::uint64_t est_rows = count_monomials(nvars, tdeg, max_system_cells) / ell + 1;
    return est_rows * est_cols <= max_system_cells;
}

// One linear system: find cofactors with target = sum R_m Q_m, unknowns
// restricted by degree and grade. Returns nullopt if inconsistent.
std::optional<std::map<std::uint64_t, GradedPolynomial>>
solve_membership_system(const GradedPolynomial& target,
                        const std::map<std::uint64_t, GradedPolynomial>& relations,
                        std::uint64_t max_system_cells, bool* bounded) {
    const std::uint64_t ell = target.modulus();
    const auto& vars = target.variables();
    const std::size_t nvars = vars.size();
    const std::uint64_t tdeg = *target.homogeneous_degree();
    const std::uint64_t tgrade = *target.homogeneous_grade();

    if (!system_within_budget(nvars, ell, tdeg, relations, max_system_cells)) {
        *bounded = true;
        return std::nullopt;
    }

    // column layout: for each relation (ascending m), the admissible cofactor
    // monomials in descending grevlex order
    struct Column {
        std::uint64_t m;
        Exponents mono;
    };
    std::vector<Column> columns;
    for (const auto& [m, q] : relations) {
        if (q.is_zero()) continue;
        const std::uint64_t qdeg = *q.homogeneous_degree();
        if (qdeg > tdeg) continue;
        const std::uint64_t rg = (tgrade + ell - m % ell) % ell;
        for (auto& e : monomials_of_degree(nvars, tdeg - qdeg, vars, ell, rg))
            columns.push_back(Column{m, std::move(e)});
    }

    // rows indexed by the monomials touched by any column product or the target
    std::unordered_map<Exponents, std::uint32_t, ExpHash> row_of;
    std::vector<SparseRow> rows;
    std::vector<std::uint64_t> rhs;
    auto row_index = [&](const Exponents& e) {
        auto it = row_of.find(e);
        if (it != row_of.end()) return it->second;
        std::uint32_t idx = static_cast<std::uint32_t>(rows.size());
        row_of.emplace(e, idx);
        rows.emplace_back();
        rhs.push_back(0);
        return idx;
    };

    Exponents key(nvars);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> col_entries(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto& q = relations.at(columns[j].m);
        for (const auto& t : q.terms()) {
            for (std::size_t k = 0; k < nvars; ++k)
                key[k] = t.exponents[k] + columns[j].mono[k];
            col_entries[j].emplace_back(row_index(key), t.coefficient);
        }
    }
    for (const auto& t : target.terms())
        rhs[row_index(t.exponents)] = t.coefficient;

    if (rows.size() * std::max<std::size_t>(columns.size(), 1) > max_system_cells) {
        *bounded = true;
        return std::nullopt;
    }
    for (std::size_t j = 0; j < col_entries.size(); ++j)
        for (const auto& [i, v] : col_entries[j])
            rows[i].emplace_back(static_cast<std::uint32_t>(j), v);
    for (auto& row : rows)
        std::sort(row.begin(), row.end());

    auto sol = solve_linear_system(rows, rhs, columns.size(), ell);
    if (!sol) return std::nullopt;

    std::map<std::uint64_t, std::vector<GradedMonomial>> cof_terms;
    for (const auto& [m, q] : relations) {
        (void)q;
        cof_terms[m];
    }
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if ((*sol)[j] % ell)
            cof_terms[columns[j].m].push_back(GradedMonomial{columns[j].mono, (*sol)[j] % ell});
    }
    std::map<std::uint64_t, GradedPolynomial> cofactors;
    for (auto& [m, terms] : cof_terms)
        cofactors.emplace(m, GradedPolynomial::from_terms(ell, vars, std::move(terms)));
    return cofactors;
}

} // namespace

MembershipResult membership_linear(const GradedPolynomial& pol,
                                   const std::map<std::uint64_t, GradedPolynomial>& relations,
                                   const MembershipOptions& options) {
    require_ring_match(pol, relations);
    MembershipResult result;

    if (pol.is_zero()) {
        MembershipWitness w;
        w.target = pol;
        w.power = 1;
        for (const auto& [m, q] : relations) {
            (void)q;
            w.cofactors.emplace(m, GradedPolynomial(pol.modulus(), pol.variables()));
        }
        result.status = MembershipStatus::witness_found;
        result.witness = std::move(w);
        result.k_checked = 1;
        return result;
    }

    if (!pol.homogeneous_degree() || !pol.homogeneous_grade())
        throw std::invalid_argument("membership_linear: target must be bihomogeneous");
    for (const auto& [m, q] : relations) {
        (void)m;
        if (!q.is_zero() && (!q.homogeneous_degree() || !q.homogeneous_grade()))
            throw std::invalid_argument("membership_linear: relations must be bihomogeneous");
    }

    // a valid counterexample point settles the question for every power
    for (const auto& pt : options.refutation_candidates) {
        auto chk = check_point(pt, pol, relations);
        if (chk.counterexample) {
            result.status = MembershipStatus::refuted;
            result.refutation = std::move(chk.counterexample);
            result.detail = "refuted by counterexample point";
            return result;
        }
    }

    bool any_bounded = false;
    const std::uint64_t pol_deg = *pol.homogeneous_degree();
    GradedPolynomial target = pol;
    for (std::uint32_t k = 1; k <= options.k_max; ++k) {
        // degrees alone tell whether the k-th system can fit; don't compute
        // pol^k unless it does
        if (!system_within_budget(pol.variables().size(), pol.modulus(), pol_deg * k,
                                  relations, options.max_system_cells)) {
            any_bounded = true;
            continue;
        }
        if (k > 1) {
            try {
                target = power(pol, k, options.max_poly_terms);
            } catch (const resource_limit_error&) {
                any_bounded = true;
                continue;
            }
        }
        bool bounded = false;
        auto cof = solve_membership_system(target, relations, options.max_system_cells, &bounded);
        if (bounded) {
            any_bounded = true;
            continue;
        }
        result.k_checked = k;
        if (cof) {
            MembershipWitness w;
            w.target = std::move(target);
            w.power = k;
            w.cofactors = std::move(*cof);
            std::string why;
            if (!witness_identity_holds(w, relations, &why))
                throw std::logic_error("membership_linear: solver produced a bad witness: " + why);
            result.status = MembershipStatus::witness_found;
            result.witness = std::move(w);
            return result;
        }
    }
    result.status = any_bounded ? MembershipStatus::resource_bounded : MembershipStatus::not_found;
    result.detail = any_bounded ? "size budget exceeded for at least one power"
                                : "no witness for any power up to k_max";
    return result;
}

PointCheckResult check_point(const PointAssignment& assignment,
                             const GradedPolynomial& pol,
                             const std::map<std::uint64_t, GradedPolynomial>& relations) {
    require_ring_match(pol, relations);
    PointCheckResult out;
    std::map<std::uint64_t, FieldElement> q_values;
    for (const auto& [m, q] : relations) {
        FieldElement v = evaluate(q, assignment);
        if (!v.is_zero()) {
            out.rejection = "Q_" + std::to_string(m) + " does not vanish at the point";
            return out;
        }
        q_values.emplace(m, v);
    }
    FieldElement pv = evaluate(pol, assignment);
    if (pv.is_zero()) {
        out.rejection = "POL vanishes at the point";
        return out;
    }
    CounterexamplePoint cex;
    cex.assignment = assignment;
    cex.pol_value = pv;
    cex.q_values = std::move(q_values);
    out.counterexample = std::move(cex);
    return out;
}

std::optional<CounterexamplePoint>
random_point_search(const GradedPolynomial& pol,
                    const std::map<std::uint64_t, GradedPolynomial>& relations,
                    std::uint64_t trials, std::uint64_t seed,
                    const std::vector<PointAssignment>& injected) {
    require_ring_match(pol, relations);
    if (trials < 1) throw std::invalid_argument("random_point_search: trials must be >= 1");
    const std::uint64_t ell = pol.modulus();

    std::uint64_t used = 0;
    for (const auto& pt : injected) {
        if (used >= trials) break;
        ++used;
        auto chk = check_point(pt, pol, relations);
        if (chk.counterexample) return chk.counterexample;
    }

    std::mt19937_64 rng(seed);
    PointAssignment pt;
    for (; used < trials; ++used) {
        pt.clear();
        for (std::uint32_t v : pol.variables())
            pt.emplace(v, FieldElement(static_cast<std::int64_t>(rng() % ell), ell));
        // cheap rejection first: stop at the first relation that does not vanish
        bool all_zero = true;
        for (const auto& [m, q] : relations) {
            (void)m;
            if (!evaluate(q, pt).is_zero()) {
                all_zero = false;
                break;
            }
        }
        if (!all_zero) continue;
        auto chk = check_point(pt, pol, relations);
        if (chk.counterexample) return chk.counterexample;
    }
    return std::nullopt;
}

std::optional<CounterexamplePoint>
structured_point_search(std::uint64_t ell, std::uint64_t b, std::uint64_t r,
                        std::uint64_t c, const std::vector<std::uint64_t>& relation_indices,
                        std::uint64_t fibers, std::uint32_t free_vars, std::uint64_t seed) {
    const ResidueSet js = jset(ell);
    const std::vector<std::uint32_t> vars(js.members.begin(), js.members.end());
    const std::size_t nvars = vars.size();
    if (free_vars == 0 || free_vars > nvars)
        throw std::invalid_argument("structured_point_search: bad free variable count");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> perm(nvars);
    PointAssignment pt;
    for (std::uint64_t f = 0; f < fibers; ++f) {
        for (std::size_t i = 0; i < nvars; ++i) perm[i] = i;
        for (std::size_t i = nvars; i-- > 1;) std::swap(perm[i], perm[rng() % (i + 1)]);
        pt.clear();
        for (std::size_t i = free_vars; i < nvars; ++i)
            pt[vars[perm[i]]] = FieldElement(static_cast<std::int64_t>(rng() % ell), ell);

        // exhaustive scan of the free coordinates
        std::vector<std::uint64_t> combo(free_vars, 0);
        for (;;) {
            for (std::uint32_t i = 0; i < free_vars; ++i)
                pt[vars[perm[i]]] = FieldElement(static_cast<std::int64_t>(combo[i]), ell);
            auto comps = power_components_at(pt, ell, c);
            bool all_zero = true;
            for (std::uint64_t m : relation_indices)
                if (!comps[m].is_zero()) {
                    all_zero = false;
                    break;
                }
            if (all_zero) {
                FieldElement pv = power_components_at(pt, ell, b)[r];
                if (!pv.is_zero()) {
                    CounterexamplePoint cex;
                    cex.assignment = pt;
                    cex.pol_value = pv;
                    for (std::uint64_t m : relation_indices)
                        cex.q_values.emplace(m, FieldElement(0, ell));
                    return cex;
                }
            }
            // next combination
            std::uint32_t at = 0;
            while (at < free_vars && ++combo[at] == ell) {
                combo[at] = 0;
                ++at;
            }
            if (at == free_vars) break;
        }
    }
    return std::nullopt;
}

SpecializedResult specialized_membership(const GradedPolynomial& pol,
                                         const std::map<std::uint64_t, GradedPolynomial>& relations,
                                         const PointAssignment& fixed,
                                         const MembershipOptions& options) {
    require_ring_match(pol, relations);
    if (!pol.is_zero() && !pol.homogeneous_degree())
        throw std::invalid_argument("specialized_membership: target must be degree-homogeneous");
    const std::uint64_t ell = pol.modulus();

    // split variables into fixed and remaining
    std::vector<std::uint32_t> remaining;
    for (std::uint32_t v : pol.variables())
        if (!fixed.count(v)) remaining.push_back(v);

    auto substitute = [&](const GradedPolynomial& p) {
        std::vector<GradedMonomial> terms;
        for (const auto& t : p.terms()) {
            std::uint64_t coeff = t.coefficient;
            Exponents e;
            e.reserve(remaining.size());
            for (std::size_t k = 0; k < p.variables().size(); ++k) {
                const std::uint32_t v = p.variables()[k];
                auto it = fixed.find(v);
                if (it == fixed.end()) {
                    e.push_back(t.exponents[k]);
                } else if (t.exponents[k]) {
                    coeff = mod_mul(coeff, mod_pow(it->second.value(), t.exponents[k], ell), ell);
                }
            }
            if (coeff) terms.push_back(GradedMonomial{std::move(e), coeff});
        }
        return GradedPolynomial::from_terms(ell, remaining, std::move(terms));
    };

    GradedPolynomial target = substitute(pol);
    std::map<std::uint64_t, GradedPolynomial> sub_rel;
    for (const auto& [m, q] : relations) sub_rel.emplace(m, substitute(q));

    SpecializedResult out;
    if (remaining.empty()) {
        // degenerates to a consistency check at the point
        bool ok = target.is_zero();
        out.solvable = ok;
        out.detail = ok ? "point-consistent" : "target does not vanish at the fully fixed point";
        return out;
    }

    // undetermined coefficients without grade restriction (substitution
    // destroys grade homogeneity); degree bound from the unspecialized shapes
    const std::uint64_t tdeg = pol.is_zero() ? 0 : *pol.homogeneous_degree();

    struct Column {
        std::uint64_t m;
        Exponents mono;
    };
    std::vector<Column> columns;
    for (const auto& [m, q] : relations) {
        if (sub_rel.at(m).is_zero()) continue;
        const std::uint64_t qdeg = *q.homogeneous_degree();
        if (qdeg > tdeg) continue;
        for (std::uint64_t d = 0; d + qdeg <= tdeg; ++d)
            for (auto& e : monomials_of_degree(remaining.size(), d, remaining, ell, std::nullopt))
                columns.push_back(Column{m, std::move(e)});
    }

    std::unordered_map<Exponents, std::uint32_t, ExpHash> row_of;
    std::vector<SparseRow> rows;
    std::vector<std::uint64_t> rhs;
    auto row_index = [&](const Exponents& e) {
        auto it = row_of.find(e);
        if (it != row_of.end()) return it->second;
        std::uint32_t idx = static_cast<std::uint32_t>(rows.size());
        row_of.emplace(e, idx);
        rows.emplace_back();
        rhs.push_back(0);
        return idx;
    };
    Exponents key(remaining.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto& q = sub_rel.at(columns[j].m);
        for (const auto& t : q.terms()) {
            for (std::size_t k = 0; k < key.size(); ++k)
                key[k] = t.exponents[k] + columns[j].mono[k];
            std::uint32_t i = row_index(key);
            rows[i].emplace_back(static_cast<std::uint32_t>(j), t.coefficient);
        }
    }
    for (const auto& t : target.terms())
        rhs[row_index(t.exponents)] = t.coefficient;
    if (rows.size() * std::max<std::size_t>(columns.size(), 1) > options.max_system_cells) {
        out.detail = "size budget exceeded";
        return out;
    }
    for (auto& row : rows) std::sort(row.begin(), row.end());

    auto sol = solve_linear_system(rows, rhs, columns.size(), ell);
    if (!sol) {
        out.detail = "specialized system inconsistent";
        return out;
    }
    std::map<std::uint64_t, std::vector<GradedMonomial>> cof_terms;
    for (std::size_t j = 0; j < columns.size(); ++j)
        if ((*sol)[j] % ell)
            cof_terms[columns[j].m].push_back(GradedMonomial{columns[j].mono, (*sol)[j] % ell});
    for (auto& [m, terms] : cof_terms)
        out.cofactors.emplace(m, GradedPolynomial::from_terms(ell, remaining, std::move(terms)));
    out.solvable = true;
    return out;
}

std::optional<MembershipWitness>
specialized_membership_interpolate(const GradedPolynomial& pol,
                                   const std::map<std::uint64_t, GradedPolynomial>& relations,
                                   std::uint32_t sweep_var,
                                   const MembershipOptions& options) {
    require_ring_match(pol, relations);
    const std::uint64_t ell = pol.modulus();
    const auto& vars = pol.variables();
    if (std::find(vars.begin(), vars.end(), sweep_var) == vars.end())
        throw std::invalid_argument("specialized_membership_interpolate: unknown sweep variable");
    if (pol.is_zero()) return std::nullopt;
    if (!pol.homogeneous_degree() || !pol.homogeneous_grade())
        throw std::invalid_argument(
            "specialized_membership_interpolate: target must be bihomogeneous");

    // gather per-value cofactors
    std::vector<SpecializedResult> solved;
    for (std::uint64_t v = 0; v < ell; ++v) {
        PointAssignment fixed;
        fixed.emplace(sweep_var, FieldElement(static_cast<std::int64_t>(v), ell));
        SpecializedResult sr = specialized_membership(pol, relations, fixed, options);
        if (!sr.solvable) return std::nullopt;
        solved.push_back(std::move(sr));
    }

    const std::size_t sweep_pos =
        static_cast<std::size_t>(std::find(vars.begin(), vars.end(), sweep_var) - vars.begin());
    std::vector<std::uint32_t> remaining;
    for (std::uint32_t v : vars)
        if (v != sweep_var) remaining.push_back(v);

    // coefficient of x^j through all ell sample points, by Lagrange expansion
    // over GF(ell): f(x) = sum_v f(v) * prod_{w != v} (x - w) / (v - w)
    std::vector<std::vector<std::uint64_t>> lagrange(ell, std::vector<std::uint64_t>(ell, 0));
    for (std::uint64_t v = 0; v < ell; ++v) {
        // numerator poly prod_{w != v} (x - w), denominators folded in
        std::vector<std::uint64_t> num(1, 1);
        std::uint64_t denom = 1;
        for (std::uint64_t w = 0; w < ell; ++w) {
            if (w == v) continue;
            std::vector<std::uint64_t> next(num.size() + 1, 0);
            for (std::size_t i = 0; i < num.size(); ++i) {
                next[i + 1] = mod_add(next[i + 1], num[i], ell);
                next[i] = mod_add(next[i], mod_mul(num[i], mod_neg(w % ell, ell), ell), ell);
            }
            num = std::move(next);
            denom = mod_mul(denom, mod_sub(v % ell, w % ell, ell), ell);
        }
        const std::uint64_t dinv = mod_inv(denom, ell);
        for (std::size_t j = 0; j < num.size(); ++j)
            lagrange[v][j] = mod_mul(num[j], dinv, ell);
    }

    // reconstruct each cofactor: collect, per relation, the coefficient of
    // every residual monomial as a function of the swept value
    std::map<std::uint64_t, GradedPolynomial> cofactors;
    const std::uint64_t tdeg = *pol.homogeneous_degree();
    const std::uint64_t tgrade = *pol.homogeneous_grade();
    for (const auto& [m, q] : relations) {
        if (q.is_zero()) continue;
        std::map<Exponents, std::vector<std::uint64_t>> samples;  // residual mono -> f(v)
        for (std::uint64_t v = 0; v < ell; ++v) {
            auto it = solved[v].cofactors.find(m);
            if (it == solved[v].cofactors.end()) continue;
            for (const auto& t : it->second.terms()) {
                auto& vec = samples[t.exponents];
                if (vec.empty()) vec.assign(ell, 0);
                vec[v] = t.coefficient;
            }
        }
        std::vector<GradedMonomial> terms;
        for (const auto& [mono, vals] : samples) {
            // interpolated coefficients of sweep_var^j
            for (std::uint64_t j = 0; j < ell; ++j) {
                std::uint64_t cj = 0;
                for (std::uint64_t v = 0; v < ell; ++v)
                    if (vals[v]) cj = (cj + vals[v] * lagrange[v][j]) % ell;
                if (!cj) continue;
                Exponents full(vars.size(), 0);
                for (std::size_t k = 0, rk = 0; k < vars.size(); ++k) {
                    if (k == sweep_pos) continue;
                    full[k] = mono[rk++];
                }
                full[sweep_pos] = static_cast<std::uint32_t>(j);
                terms.push_back(GradedMonomial{std::move(full), cj});
            }
        }
        GradedPolynomial r = GradedPolynomial::from_terms(ell, vars, std::move(terms));
        // project onto the mandated bidegree; sound because the ideal is bigraded
        const std::uint64_t qdeg = *q.homogeneous_degree();
        if (qdeg > tdeg) continue;
        std::vector<GradedMonomial> kept;
        for (const auto& t : r.terms()) {
            if (r.total_degree(t.exponents) != tdeg - qdeg) continue;
            if (r.grade(t.exponents) != (tgrade + ell - m % ell) % ell) continue;
            kept.push_back(t);
        }
        cofactors.emplace(m, GradedPolynomial::from_terms(ell, vars, std::move(kept)));
    }

    MembershipWitness w;
    w.target = pol;
    w.power = 1;
    w.cofactors = std::move(cofactors);
    if (!witness_identity_holds(w, relations)) return std::nullopt;
    return w;
}

} // namespace pcong
