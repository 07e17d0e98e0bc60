#include <doctest.h>

#include <random>

#include "pcong/ideals.hpp"
#include "pcong/prover.hpp"

using namespace pcong;

namespace {

std::map<std::uint64_t, GradedPolynomial> as_relations(const std::vector<GradedPolynomial>& v) {
    std::map<std::uint64_t, GradedPolynomial> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace(i, v[i]);
    return out;
}

GradedPolynomial mono(std::uint64_t ell, const std::vector<std::uint32_t>& vars,
                      std::initializer_list<std::uint32_t> exps, std::uint64_t c) {
    return GradedPolynomial::from_terms(ell, vars, {GradedMonomial{Exponents(exps), c}});
}

} // namespace

TEST_CASE("single-generator basis") {
    const std::vector<std::uint32_t> vars{0, 1, 3};
    GradedPolynomial j0 = mono(7, vars, {1, 0, 0}, 1);
    GroebnerBasis gb = buchberger(as_relations({j0}));
    REQUIRE(gb.elements.size() == 1);
    CHECK(gb.elements[0] == j0);
    CHECK(normal_form(j0, gb).is_zero());
    CHECK(normal_form(GradedPolynomial(7, vars), gb).is_zero());
}

TEST_CASE("linear relations give transitivity") {
    const std::vector<std::uint32_t> vars{0, 1, 3};
    GradedPolynomial j0_j1 = mono(7, vars, {1, 0, 0}, 1) - mono(7, vars, {0, 1, 0}, 1);
    GradedPolynomial j1_j3 = mono(7, vars, {0, 1, 0}, 1) - mono(7, vars, {0, 0, 1}, 1);
    GroebnerBasis gb = buchberger(as_relations({j0_j1, j1_j3}));
    GradedPolynomial j0_j3 = mono(7, vars, {1, 0, 0}, 1) - mono(7, vars, {0, 0, 1}, 1);
    std::map<std::uint64_t, GradedPolynomial> cof;
    CHECK(normal_form(j0_j3, gb, &cof).is_zero());
    // the recorded combination reproduces the input exactly
    GradedPolynomial acc(7, vars);
    acc = acc + cof.at(0) * j0_j1 + cof.at(1) * j1_j3;
    CHECK(acc == j0_j3);
}

TEST_CASE("the mod-11 relations: reduced basis and membership") {
    auto relations = build_relations(11);
    GroebnerBasis gb = buchberger(relations);
    CHECK(gb.elements.size() == 24);  // reduced bases are unique per order

    GradedPolynomial pol = build_pol(1, 11, 6);
    std::map<std::uint64_t, GradedPolynomial> cof;
    CHECK(normal_form(pol, gb, &cof).is_zero());
    MembershipWitness w;
    w.target = pol;
    w.power = 1;
    // project onto the mandated bidegree before checking the strict shape
    for (const auto& [m, q] : relations) {
        GradedPolynomial r = cof.count(m) ? cof.at(m) : GradedPolynomial(11, pol.variables());
        std::vector<GradedMonomial> kept;
        for (const auto& t : r.terms()) {
            if (r.total_degree(t.exponents) != 3) continue;
            if (r.grade(t.exponents) != (6 + 11 - m) % 11) continue;
            kept.push_back(t);
        }
        (void)q;
        w.cofactors.emplace(m, GradedPolynomial::from_terms(11, pol.variables(), std::move(kept)));
    }
    CHECK(witness_identity_holds(w, relations));

    // a single monomial is never in the ideal (its series value is a product
    // of nonzero series), so the perturbed target falls outside
    GradedPolynomial spike =
        GradedPolynomial::from_terms(11, pol.variables(), {pol.terms()[0]});
    CHECK_FALSE(normal_form(pol + spike, gb).is_zero());
}

TEST_CASE("buchberger is idempotent on reduced bases") {
    std::vector<std::map<std::uint64_t, GradedPolynomial>> inputs;
    inputs.push_back(build_relations(7));
    inputs.push_back(build_relations(11));
    {
        const std::vector<std::uint32_t> vars{0, 1, 3};
        inputs.push_back(as_relations(
            {mono(7, vars, {1, 0, 0}, 1) - mono(7, vars, {0, 1, 0}, 1),
             mono(7, vars, {0, 1, 0}, 1) - mono(7, vars, {0, 0, 1}, 1)}));
    }
    for (const auto& relations : inputs) {
        GroebnerBasis gb = buchberger(relations);
        GroebnerBasis gb2 = buchberger(as_relations(gb.elements));
        REQUIRE(gb.elements.size() == gb2.elements.size());
        for (std::size_t i = 0; i < gb.elements.size(); ++i)
            CHECK(gb.elements[i] == gb2.elements[i]);
    }
}

TEST_CASE("membership routes agree on natural and synthetic instances") {
    std::mt19937_64 rng(31);
    for (std::uint64_t ell : {7ull, 11ull}) {
        auto relations = build_relations(ell);
        std::vector<GradedPolynomial> targets;
        if (ell == 11) {
            targets.push_back(build_pol(1, 11, 6));
            targets.push_back(build_pol(3, 11, 7));
        }
        // synthetic member: random combination with linear cofactors
        const auto& vars = relations.begin()->second.variables();
        GradedPolynomial member(ell, vars);
        for (const auto& [m, q] : relations) {
            if (q.is_zero()) continue;
            const std::uint64_t want = (5 + ell - m % ell) % ell;
            std::vector<GradedMonomial> terms;
            for (auto& e : monomials_of_degree(vars.size(), 1, vars, ell, want)) {
                std::uint64_t c = rng() % ell;
                if (c) terms.push_back(GradedMonomial{std::move(e), c});
            }
            member = member + GradedPolynomial::from_terms(ell, vars, std::move(terms)) * q;
        }
        if (!member.is_zero()) targets.push_back(member);
        // synthetic non-member: perturb a relation by a same-bidegree monomial
        const GradedPolynomial& q0 = relations.begin()->second;
        if (!q0.is_zero()) {
            GradedPolynomial bumped =
                q0 + GradedPolynomial::from_terms(ell, vars, {q0.terms()[0]}).scaled(
                         FieldElement(1, ell));
            if (bumped.homogeneous_degree() && bumped.homogeneous_grade())
                targets.push_back(bumped);
        }

        for (const auto& target : targets) {
            MembershipResult lin = membership_linear(target, relations);
            MembershipResult grb = membership_groebner(target, relations);
            CHECK(lin.status == grb.status);
            if (lin.status == MembershipStatus::witness_found) {
                CHECK(witness_identity_holds(*lin.witness, relations));
                CHECK(witness_identity_holds(*grb.witness, relations));
                CHECK(lin.witness->power == grb.witness->power);
            }
        }
    }
}

TEST_CASE("degree-truncated basis decides bounded-degree membership (ell=13)") {
    auto relations = build_relations(13);
    const auto& vars = relations.begin()->second.variables();
    std::mt19937_64 rng(37);

    // member of degree 10: linear cofactors against the degree-9 relations
    GradedPolynomial member(13, vars);
    for (const auto& [m, q] : relations) {
        const std::uint64_t want = (4 + 13 - m % 13) % 13;
        std::vector<GradedMonomial> terms;
        for (auto& e : monomials_of_degree(vars.size(), 1, vars, 13, want)) {
            std::uint64_t c = rng() % 13;
            if (c) terms.push_back(GradedMonomial{std::move(e), c});
        }
        member = member + GradedPolynomial::from_terms(13, vars, std::move(terms)) * q;
    }
    REQUIRE_FALSE(member.is_zero());

    GroebnerOptions gopt;
    gopt.max_degree = *member.homogeneous_degree();
    GroebnerBasis gb = buchberger(relations, gopt);
    CHECK(gb.truncation_degree == 10);
    std::map<std::uint64_t, GradedPolynomial> cof;
    CHECK(normal_form(member, gb, &cof).is_zero());

    // non-member of the same degree: one extra monomial (never in the ideal)
    GradedPolynomial spike =
        GradedPolynomial::from_terms(13, vars, {member.terms()[0]});
    CHECK_FALSE(normal_form(member + spike, gb).is_zero());

    // cross-validate with the linear route
    MembershipResult lin = membership_linear(member, relations);
    CHECK(lin.status == MembershipStatus::witness_found);
}

TEST_CASE("buchberger input validation") {
    CHECK_THROWS_AS(buchberger({}), std::invalid_argument);
    auto r7 = build_relations(7);
    auto r11 = build_relations(11);
    auto mixed = r7;
    mixed.insert(r11.begin(), r11.end());
    CHECK_THROWS_AS(buchberger(mixed), std::invalid_argument);
}
