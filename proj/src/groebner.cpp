#include <algorithm>
#include <set>

#include "pcong/ideals.hpp"

// Buchberger's algorithm over GF(ell) with grevlex order, classic pair
// criteria, and full provenance tracking so that ideal members can be
// rewritten as explicit combinations of the original relations.

namespace pcong {

namespace {

using Provenance = std::map<std::uint64_t, GradedPolynomial>;

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

Exponents lcm_exps(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
    return r;
}

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] && b[k]) return false;
    return true;
}

std::uint64_t exp_degree(const Exponents& e) {
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

struct Pair {
    Exponents lcm;
    std::size_t i, j;  // i < j
};

struct PairLess {
    // normal selection strategy: smallest lcm first (grevlex is
    // degree-compatible, so this is degree-ascending)
    bool operator()(const Pair& a, const Pair& b) const {
        if (a.lcm != b.lcm) return grevlex_less(a.lcm, b.lcm);
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    }
};

struct Working {
    std::uint64_t ell;
    std::vector<std::uint32_t> vars;
    std::vector<GradedPolynomial> polys;   // monic
    std::vector<Provenance> prov;
    std::vector<std::uint64_t> keys;

    Provenance zero_prov() const {
        Provenance p;
        for (std::uint64_t m : keys) p.emplace(m, GradedPolynomial(ell, vars));
        return p;
    }

    void scale_prov(Provenance& p, FieldElement c) const {
        for (auto& [m, poly] : p) poly = poly.scaled(c);
    }

    // p -= c * X^e * q (provenance combination)
    void axpy_prov(Provenance& p, std::uint64_t c, const Exponents& e, const Provenance& q) const {
        for (auto& [m, poly] : p) {
            auto it = q.find(m);
            if (it == q.end() || it->second.is_zero()) continue;
            poly = poly - it->second.times_monomial(c, e);
        }
    }

    // Full reduction of f by the current polys; cofactor provenance of the
    // remainder is accumulated into fp.
    GradedPolynomial reduce_full(GradedPolynomial f, Provenance& fp) const {
        std::vector<GradedMonomial> remainder;
        while (!f.is_zero()) {
            const GradedMonomial& lt = f.leading();
            bool reduced = false;
            for (std::size_t g = 0; g < polys.size(); ++g) {
                if (polys[g].is_zero()) continue;
                const GradedMonomial& glt = polys[g].leading();
                if (!divides(glt.exponents, lt.exponents)) continue;
                Exponents shift(lt.exponents.size());
                for (std::size_t k = 0; k < shift.size(); ++k)
                    shift[k] = lt.exponents[k] - glt.exponents[k];
                // polys are monic, so the factor is just the leading coefficient
                const std::uint64_t c = lt.coefficient;
                f = f - polys[g].times_monomial(c, shift);
                axpy_prov(fp, c, shift, prov[g]);
                reduced = true;
                break;
            }
            if (!reduced) {
                remainder.push_back(lt);
                // move the leading term out of f
                f = f - GradedPolynomial::from_terms(ell, vars, {lt});
            }
        }
        return GradedPolynomial::from_terms(ell, vars, std::move(remainder));
    }
};

} // namespace

GroebnerBasis buchberger(const std::map<std::uint64_t, GradedPolynomial>& relations,
                         const GroebnerOptions& options) {
    if (relations.empty()) throw std::invalid_argument("buchberger: no relations");
    Working w;
    bool first = true;
    for (const auto& [m, q] : relations) {
        if (first) {
            w.ell = q.modulus();
            w.vars = q.variables();
            first = false;
        } else if (q.modulus() != w.ell || q.variables() != w.vars) {
            throw std::invalid_argument("buchberger: relations live in different rings");
        }
        w.keys.push_back(m);
    }
    if (options.max_degree) {
        for (const auto& [m, q] : relations) {
            (void)m;
            if (!q.is_zero() && !q.homogeneous_degree())
                throw std::invalid_argument(
                    "buchberger: degree truncation requires homogeneous relations");
        }
    }

    std::set<Pair, PairLess> pairs;

    auto add_poly = [&](GradedPolynomial p, Provenance pr) {
        const FieldElement lead_inv =
            inverse(FieldElement(static_cast<std::int64_t>(p.leading().coefficient), w.ell));
        p = p.scaled(lead_inv);
        w.scale_prov(pr, lead_inv);
        const std::size_t idx = w.polys.size();
        for (std::size_t g = 0; g < idx; ++g) {
            if (w.polys[g].is_zero()) continue;
            if (coprime(w.polys[g].leading().exponents, p.leading().exponents))
                continue;  // S-polynomial reduces to zero
            Pair pair;
            pair.i = g;
            pair.j = idx;
            pair.lcm = lcm_exps(w.polys[g].leading().exponents, p.leading().exponents);
            if (options.max_degree && exp_degree(pair.lcm) > options.max_degree)
                continue;  // outside the truncation
            pairs.insert(std::move(pair));
        }
        w.polys.push_back(std::move(p));
        w.prov.push_back(std::move(pr));
    };

    for (const auto& [m, q] : relations) {
        if (q.is_zero()) continue;
        Provenance pr = w.zero_prov();
        pr[m] = GradedPolynomial::from_terms(w.ell, w.vars,
                                             {GradedMonomial{Exponents(w.vars.size(), 0), 1}});
        add_poly(q, std::move(pr));
    }

    while (!pairs.empty()) {
        if (w.polys.size() > options.max_basis)
            throw resource_limit_error("buchberger: basis size limit exceeded");
        Pair pair = *pairs.begin();
        pairs.erase(pairs.begin());

        // chain criterion: some h with lt(h) | lcm(i,j) whose sub-pair lcms
        // are both strictly smaller; their syzygies generate this one
        bool skip = false;
        for (std::size_t h = 0; h < w.polys.size() && !skip; ++h) {
            if (h == pair.i || h == pair.j || w.polys[h].is_zero()) continue;
            const auto& lh = w.polys[h].leading().exponents;
            if (!divides(lh, pair.lcm)) continue;
            if (lcm_exps(lh, w.polys[pair.i].leading().exponents) == pair.lcm) continue;
            if (lcm_exps(lh, w.polys[pair.j].leading().exponents) == pair.lcm) continue;
            skip = true;
        }
        if (skip) continue;

        const GradedPolynomial& f = w.polys[pair.i];
        const GradedPolynomial& g = w.polys[pair.j];
        Exponents sf(pair.lcm.size()), sg(pair.lcm.size());
        for (std::size_t k = 0; k < pair.lcm.size(); ++k) {
            sf[k] = pair.lcm[k] - f.leading().exponents[k];
            sg[k] = pair.lcm[k] - g.leading().exponents[k];
        }
        // both monic: S = X^sf * f - X^sg * g
        GradedPolynomial s = f.times_monomial(1, sf) - g.times_monomial(1, sg);
        Provenance sp = w.zero_prov();
        for (auto& [m, poly] : sp) {
            auto itf = w.prov[pair.i].find(m);
            auto itg = w.prov[pair.j].find(m);
            GradedPolynomial acc(w.ell, w.vars);
            if (itf != w.prov[pair.i].end() && !itf->second.is_zero())
                acc = acc + itf->second.times_monomial(1, sf);
            if (itg != w.prov[pair.j].end() && !itg->second.is_zero())
                acc = acc - itg->second.times_monomial(1, sg);
            poly = std::move(acc);
        }
        GradedPolynomial r = w.reduce_full(std::move(s), sp);
        if (!r.is_zero()) add_poly(std::move(r), std::move(sp));
    }

    // minimalize: drop elements whose leading monomial another one divides
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < w.polys.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < w.polys.size() && !redundant; ++j) {
            if (i == j) continue;
            const auto& li = w.polys[i].leading().exponents;
            const auto& lj = w.polys[j].leading().exponents;
            if (!divides(lj, li)) continue;
            if (lj == li && j > i) continue;  // keep the earlier of equal leads
            redundant = true;
        }
        if (!redundant) keep.push_back(i);
    }

    Working reduced;
    reduced.ell = w.ell;
    reduced.vars = w.vars;
    reduced.keys = w.keys;
    // tail-reduce each kept element against the other kept elements
    for (std::size_t round = 0; round < keep.size(); ++round) {
        const std::size_t i = keep[round];
        Working others;
        others.ell = w.ell;
        others.vars = w.vars;
        others.keys = w.keys;
        for (std::size_t j : keep) {
            if (j == i) continue;
            others.polys.push_back(w.polys[j]);
            others.prov.push_back(w.prov[j]);
        }
        Provenance pr = w.prov[i];
        GradedPolynomial r = others.reduce_full(w.polys[i], pr);
        // r stays monic: its leading term is untouched by the others
        reduced.polys.push_back(std::move(r));
        reduced.prov.push_back(std::move(pr));
    }

    // canonical ascending order by leading monomial
    std::vector<std::size_t> order(reduced.polys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return grevlex_less(reduced.polys[a].leading().exponents,
                            reduced.polys[b].leading().exponents);
    });

    GroebnerBasis out;
    out.ell = w.ell;
    out.vars = w.vars;
    out.relation_keys = w.keys;
    out.truncation_degree = options.max_degree;
    for (std::size_t i : order) {
        out.elements.push_back(std::move(reduced.polys[i]));
        out.provenance.push_back(std::move(reduced.prov[i]));
    }
    return out;
}

GradedPolynomial normal_form(const GradedPolynomial& p, const GroebnerBasis& basis,
                             std::map<std::uint64_t, GradedPolynomial>* cofactors) {
    if (p.modulus() != basis.ell || p.variables() != basis.vars)
        throw std::invalid_argument("normal_form: polynomial from a different ring");
    Working w;
    w.ell = basis.ell;
    w.vars = basis.vars;
    w.keys = basis.relation_keys;
    w.polys = basis.elements;
    w.prov = basis.provenance;

    // remainder r satisfies p = r + combination; track the combination
    Provenance comb = w.zero_prov();
    GradedPolynomial r = w.reduce_full(p, comb);
    if (cofactors) {
        cofactors->clear();
        // reduce_full accumulated p - r = -comb, i.e. p = r + (-1)*comb
        for (auto& [m, poly] : comb)
            cofactors->emplace(m, GradedPolynomial(basis.ell, basis.vars) - poly);
    }
    return r;
}

MembershipResult membership_groebner(const GradedPolynomial& pol,
                                     const std::map<std::uint64_t, GradedPolynomial>& relations,
                                     const MembershipOptions& options) {
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
        throw std::invalid_argument("membership_groebner: target must be bihomogeneous");

    for (const auto& pt : options.refutation_candidates) {
        auto chk = check_point(pt, pol, relations);
        if (chk.counterexample) {
            result.status = MembershipStatus::refuted;
            result.refutation = std::move(chk.counterexample);
            result.detail = "refuted by counterexample point";
            return result;
        }
    }

    bool nonzero_relation = false;
    for (const auto& [m, q] : relations) {
        (void)m;
        if (!q.is_zero()) nonzero_relation = true;
    }
    if (!nonzero_relation) {
        result.status = MembershipStatus::not_found;
        result.k_checked = options.k_max;
        result.detail = "all relations are zero";
        return result;
    }

    const std::uint64_t pol_deg = *pol.homogeneous_degree();
    bool any_bounded = false;
    for (std::uint32_t k = 1; k <= options.k_max; ++k) {
        // the truncated basis roams the staircase of monomials up to the
        // target degree; refuse instances where that space is already huge
        if (count_monomials(pol.variables().size(), pol_deg * k,
                            options.max_groebner_monomials + 1) >
            options.max_groebner_monomials) {
            any_bounded = true;
            continue;
        }
        GradedPolynomial target;
        try {
            target = k == 1 ? pol : power(pol, k, options.max_poly_terms);
            GroebnerOptions gopt;
            gopt.max_degree = pol_deg * k;
            GroebnerBasis gb = buchberger(relations, gopt);
            std::map<std::uint64_t, GradedPolynomial> cof;
            GradedPolynomial rem = normal_form(target, gb, &cof);
            result.k_checked = k;
            if (rem.is_zero()) {
                MembershipWitness w;
                w.target = std::move(target);
                w.power = k;
                // project cofactors onto the mandated bidegree (the ideal is
                // bigraded, so the projection is still a witness)
                const std::uint64_t ell = pol.modulus();
                const std::uint64_t tdeg = pol_deg * k;
                const std::uint64_t tgrade = *w.target.homogeneous_grade();
                for (auto& [m, r] : cof) {
                    auto qit = relations.find(m);
                    if (qit == relations.end() || qit->second.is_zero() || r.is_zero()) {
                        w.cofactors.emplace(m, GradedPolynomial(ell, pol.variables()));
                        continue;
                    }
                    const std::uint64_t qdeg = *qit->second.homogeneous_degree();
                    std::vector<GradedMonomial> kept;
                    for (const auto& t : r.terms()) {
                        if (r.total_degree(t.exponents) != tdeg - qdeg) continue;
                        if (r.grade(t.exponents) != (tgrade + ell - m % ell) % ell) continue;
                        kept.push_back(t);
                    }
                    w.cofactors.emplace(
                        m, GradedPolynomial::from_terms(ell, pol.variables(), std::move(kept)));
                }
                std::string why;
                if (!witness_identity_holds(w, relations, &why))
                    throw std::logic_error("membership_groebner: bad witness: " + why);
                result.status = MembershipStatus::witness_found;
                result.witness = std::move(w);
                return result;
            }
        } catch (const resource_limit_error&) {
            any_bounded = true;
        }
    }
    result.status = any_bounded ? MembershipStatus::resource_bounded : MembershipStatus::not_found;
    result.detail = any_bounded ? "size budget exceeded for at least one power"
                                : "normal form nonzero for every power up to k_max";
    return result;
}

} // namespace pcong
