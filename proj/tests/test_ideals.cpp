#include <doctest.h>

#include <random>

#include "pcong/ideals.hpp"
#include "pcong/prover.hpp"

using namespace pcong;

namespace {

PointAssignment known_point_17() {
    PointAssignment pt;
    const std::vector<std::pair<std::uint32_t, std::int64_t>> vals{
        {0, 1}, {1, 1}, {3, 2}, {4, 10}, {6, 9}, {10, 11}, {11, 15}, {15, 12}};
    for (auto [i, v] : vals) pt.emplace(i, FieldElement(v, 17));
    return pt;
}

// random bihomogeneous combination sum R_m Q_m with degree-d cofactors
GradedPolynomial random_member(const std::map<std::uint64_t, GradedPolynomial>& relations,
                               std::uint64_t target_grade, std::uint64_t cof_degree,
                               std::mt19937_64& rng) {
    std::uint64_t ell = 0;
    std::vector<std::uint32_t> vars;
    for (const auto& [m, q] : relations) {
        (void)m;
        if (!q.is_zero()) {
            ell = q.modulus();
            vars = q.variables();
            break;
        }
    }
    GradedPolynomial acc(ell, vars);
    for (const auto& [m, q] : relations) {
        if (q.is_zero()) continue;
        const std::uint64_t want = (target_grade + ell - m % ell) % ell;
        std::vector<GradedMonomial> terms;
        for (auto& e : monomials_of_degree(vars.size(), cof_degree, vars, ell, want)) {
            std::uint64_t c = rng() % ell;
            if (c) terms.push_back(GradedMonomial{std::move(e), c});
        }
        acc = acc + GradedPolynomial::from_terms(ell, vars, std::move(terms)) * q;
    }
    return acc;
}

} // namespace

TEST_CASE("the mod-11 witness") {
    GradedPolynomial pol = build_pol(1, 11, 6);
    auto relations = build_relations(11);
    MembershipResult res = membership_linear(pol, relations);
    REQUIRE(res.status == MembershipStatus::witness_found);
    CHECK(res.witness->power == 1);
    CHECK(res.witness->cofactors.size() == 5);
    int nonzero = 0;
    for (const auto& [m, rm] : res.witness->cofactors) {
        if (rm.is_zero()) continue;
        ++nonzero;
        CHECK(*rm.homogeneous_degree() == 3);   // deg POL - deg Q = 7 - 4
        CHECK(*rm.homogeneous_grade() == (6 + 11 - m) % 11);
    }
    CHECK(nonzero == 5);
    CHECK(witness_identity_holds(*res.witness, relations));
}

TEST_CASE("membership of a relation itself is the trivial witness") {
    auto relations = build_relations(11);
    MembershipResult res = membership_linear(relations.at(3), relations);
    REQUIRE(res.status == MembershipStatus::witness_found);
    const auto& r3 = res.witness->cofactors.at(3);
    REQUIRE(r3.size() == 1);
    CHECK(r3.terms()[0].coefficient == 1);
    CHECK(*r3.homogeneous_degree() == 0);
    for (const auto& [m, rm] : res.witness->cofactors)
        if (m != 3) CHECK(rm.is_zero());
}

TEST_CASE("the mod-11 a=3 instance also solves at k=1") {
    GradedPolynomial pol = build_pol(3, 11, 7);
    CHECK(*pol.homogeneous_degree() == 10);
    auto relations = build_relations(11);
    MembershipResult res = membership_linear(pol, relations);
    REQUIRE(res.status == MembershipStatus::witness_found);
    CHECK(res.witness->power == 1);
    CHECK(witness_identity_holds(*res.witness, relations));
}

TEST_CASE("zero target is trivially a member") {
    auto relations = build_relations(11);
    GradedPolynomial zero(11, relations.begin()->second.variables());
    MembershipResult res = membership_linear(zero, relations);
    REQUIRE(res.status == MembershipStatus::witness_found);
    for (const auto& [m, rm] : res.witness->cofactors) CHECK(rm.is_zero());
}

TEST_CASE("nonzero target, all-zero relations: no witness at any power") {
    // at ell = 5 every Q_m is the zero polynomial
    auto relations = build_relations(5);
    for (const auto& [m, q] : relations) CHECK(q.is_zero());
    GradedPolynomial target = grade_component(power(generator(5), 3), 0);
    REQUIRE_FALSE(target.is_zero());
    MembershipResult res = membership_linear(target, relations);
    CHECK(res.status == MembershipStatus::not_found);
    CHECK(res.k_checked == 3);
}

TEST_CASE("degree short-circuit: relations of larger degree than any tried power") {
    // ell = 13: c = 9, so deg Q_m = 9; a degree-2 target has no admissible
    // cofactors for k = 1..3 (degrees 2, 4, 6)
    auto relations = build_relations(13);
    GradedPolynomial target = grade_component(power(generator(13), 2), 2);
    REQUIRE_FALSE(target.is_zero());
    MembershipResult res = membership_linear(target, relations);
    CHECK(res.status == MembershipStatus::not_found);
    CHECK(res.k_checked == 3);
}

TEST_CASE("random ideal members are recognized with verified witnesses") {
    std::mt19937_64 rng(23);
    for (std::uint64_t ell : {7ull, 11ull}) {
        auto relations = build_relations(ell);
        for (int i = 0; i < 5; ++i) {
            GradedPolynomial member =
                random_member(relations, (i + 2) % ell, 1, rng);
            if (member.is_zero()) continue;
            MembershipResult res = membership_linear(member, relations);
            REQUIRE(res.status == MembershipStatus::witness_found);
            CHECK(witness_identity_holds(*res.witness, relations));
        }
    }
}

TEST_CASE("check_point on the mod-17 refutation instance") {
    GradedPolynomial pol = build_pol(3, 17, 15);
    REQUIRE_FALSE(pol.is_zero());
    CHECK(*pol.homogeneous_degree() == 16);
    auto relations = build_relations(17);
    CHECK(relations.size() == 8);

    PointCheckResult chk = check_point(known_point_17(), pol, relations);
    REQUIRE(chk.counterexample.has_value());
    CHECK(chk.counterexample->pol_value == FieldElement(6, 17));
    CHECK(chk.counterexample->q_values.size() == 8);
    for (const auto& [m, v] : chk.counterexample->q_values) CHECK(v.is_zero());

    // all-zero assignment: POL vanishes too (homogeneous of positive degree)
    PointAssignment zeros;
    for (std::uint32_t v : pol.variables()) zeros.emplace(v, FieldElement(0, 17));
    PointCheckResult rej = check_point(zeros, pol, relations);
    CHECK_FALSE(rej.counterexample.has_value());
    CHECK(rej.rejection == "POL vanishes at the point");
}

TEST_CASE("counterexample dominance on the mod-17 instance") {
    GradedPolynomial pol = build_pol(3, 17, 15);
    auto relations = build_relations(17);

    MembershipOptions opt;
    opt.refutation_candidates.push_back(known_point_17());
    MembershipResult res = membership_linear(pol, relations, opt);
    CHECK(res.status == MembershipStatus::refuted);
    REQUIRE(res.refutation.has_value());
    CHECK(res.refutation->pol_value == FieldElement(6, 17));

    // without the point the k <= 3 systems exceed the size budget, so no
    // witness can be (and is) produced either
    MembershipResult plain = membership_linear(pol, relations);
    CHECK(plain.status != MembershipStatus::witness_found);
    CHECK(plain.status != MembershipStatus::refuted);
}

TEST_CASE("no counterexample exists where a witness exists") {
    GradedPolynomial pol = build_pol(1, 11, 6);
    auto relations = build_relations(11);
    CHECK_FALSE(random_point_search(pol, relations, 2000, 42).has_value());
}

TEST_CASE("random_point_search is deterministic and honors injection") {
    GradedPolynomial pol = build_pol(3, 17, 15);
    auto relations = build_relations(17);

    auto a = random_point_search(pol, relations, 500, 7);
    auto b = random_point_search(pol, relations, 500, 7);
    CHECK(a.has_value() == b.has_value());
    if (a && b) CHECK(a->assignment == b->assignment);

    auto injected = random_point_search(pol, relations, 1, 7, {known_point_17()});
    REQUIRE(injected.has_value());
    CHECK(injected->assignment == known_point_17());
    CHECK(injected->pol_value == FieldElement(6, 17));
}

TEST_CASE("specialized membership") {
    GradedPolynomial pol = build_pol(1, 11, 6);
    auto relations = build_relations(11);

    // restriction of the known witness: every J10 value is solvable
    for (std::uint64_t v = 0; v < 11; ++v) {
        PointAssignment fixed{{10, FieldElement(static_cast<std::int64_t>(v), 11)}};
        SpecializedResult sr = specialized_membership(pol, relations, fixed);
        CHECK(sr.solvable);
    }

    // fixing every variable degenerates to a point check
    PointAssignment zeros;
    for (std::uint32_t v : pol.variables()) zeros.emplace(v, FieldElement(0, 11));
    CHECK(specialized_membership(pol, relations, zeros).solvable);

    GradedPolynomial pol17 = build_pol(3, 17, 15);
    auto relations17 = build_relations(17);
    SpecializedResult bad = specialized_membership(pol17, relations17, known_point_17());
    CHECK_FALSE(bad.solvable);
}

TEST_CASE("interpolated reconstruction from specializations") {
    GradedPolynomial pol = build_pol(1, 11, 6);
    auto relations = build_relations(11);
    auto witness = specialized_membership_interpolate(pol, relations, 10);
    // heuristic, but it must never hand back an unverified witness
    if (witness) {
        CHECK(witness->power == 1);
        CHECK(witness_identity_holds(*witness, relations));
    }
    CHECK(witness.has_value());  // and on this instance it does succeed
}

TEST_CASE("structured point search smoke") {
    // on the mod-11 instance nothing can exist; the scan must come back empty
    auto none = structured_point_search(11, 7, 6, 4, {3, 6, 8, 9, 10}, 3, 2, 5);
    CHECK_FALSE(none.has_value());
}

TEST_CASE("contract violations") {
    GradedPolynomial pol = build_pol(1, 11, 6);
    auto relations = build_relations(11);

    // non-homogeneous target
    GradedPolynomial skew = pol + generator(11);
    CHECK_THROWS_AS(membership_linear(skew, relations), std::invalid_argument);

    // relations from a different ring
    auto relations7 = build_relations(7);
    CHECK_THROWS_AS(membership_linear(pol, relations7), std::invalid_argument);
    CHECK_THROWS_AS(random_point_search(pol, relations, 0, 1), std::invalid_argument);
}
