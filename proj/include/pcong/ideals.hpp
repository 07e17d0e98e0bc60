#pragma once

// Decide whether POL (or a small power of it) lies in the ideal generated by
// the relations {Q_m} in GF(ell)[J_i], and evaluate candidate counterexample
// points. Routes: grade-constrained undetermined coefficients (linear),
// Buchberger / normal form (groebner), and specialization-assisted search.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcong/gradedpoly.hpp"

namespace pcong {

using PointAssignment = std::map<std::uint32_t, FieldElement>;

struct MembershipWitness {
    GradedPolynomial target;                          // POL^power
    std::uint32_t power = 1;
    std::map<std::uint64_t, GradedPolynomial> cofactors;  // m -> R_m
};

struct CounterexamplePoint {
    PointAssignment assignment;
    FieldElement pol_value;                            // nonzero
    std::map<std::uint64_t, FieldElement> q_values;    // all zero
};

// target == sum R_m Q_m, checked by exact polynomial arithmetic, with each
// R_m zero or homogeneous of the mandated degree and grade.
bool witness_identity_holds(const MembershipWitness& w,
                            const std::map<std::uint64_t, GradedPolynomial>& relations,
                            std::string* why = nullptr);

struct MembershipOptions {
    std::uint32_t k_max = 3;
    // dense-system budget: rows*cols of any single linear system
    std::uint64_t max_system_cells = 32'000'000;
    // intermediate polynomial budget (POL^k, products)
    std::size_t max_poly_terms = 2'000'000;
    // groebner-route budget: monomials of degree <= the truncation bound
    std::uint64_t max_groebner_monomials = 100'000;
    // candidate counterexample points checked before any solving; a valid
    // counterexample refutes membership for every power at once
    std::vector<PointAssignment> refutation_candidates;
};

enum class MembershipStatus {
    witness_found,    // exact witness, identity re-verified
    refuted,          // counterexample point: impossible for every power
    not_found,        // every k <= k_max solved and inconsistent
    resource_bounded  // at least one k skipped because of size budgets
};

struct MembershipResult {
    MembershipStatus status = MembershipStatus::not_found;
    std::optional<MembershipWitness> witness;
    std::optional<CounterexamplePoint> refutation;
    std::uint32_t k_checked = 0;  // largest power actually solved
    std::string detail;
};

// Undetermined coefficients, one linear system per power k. Unknowns are the
// coefficients of each R_m restricted to total degree deg(POL^k) - deg(Q_m)
// and grade grade(POL^k) - m; equations are indexed by the monomials that can
// occur. Requires POL and all relations homogeneous in degree and grade.
MembershipResult membership_linear(const GradedPolynomial& pol,
                                   const std::map<std::uint64_t, GradedPolynomial>& relations,
                                   const MembershipOptions& options = {});

struct PointCheckResult {
    std::optional<CounterexamplePoint> counterexample;
    std::string rejection;  // which condition failed, when not a counterexample
};

// A counterexample needs every Q_m to vanish at the point while POL does not.
PointCheckResult check_point(const PointAssignment& assignment,
                             const GradedPolynomial& pol,
                             const std::map<std::uint64_t, GradedPolynomial>& relations);

// Deterministic given (trials, seed). Injected points are tried first, in
// order, before any random assignment. Best-effort: absence of a find proves
// nothing.
std::optional<CounterexamplePoint>
random_point_search(const GradedPolynomial& pol,
                    const std::map<std::uint64_t, GradedPolynomial>& relations,
                    std::uint64_t trials, std::uint64_t seed,
                    const std::vector<PointAssignment>& injected = {});

// Structured variant: repeatedly fixes all but `free_vars` coordinates at
// random and scans the remaining subspace exhaustively via cyclic powers.
// Only valid when pol = grade_component(generator^b, r) and the relations are
// the grade components of generator^c, which is how the prover builds them.
std::optional<CounterexamplePoint>
structured_point_search(std::uint64_t ell, std::uint64_t b, std::uint64_t r,
                        std::uint64_t c, const std::vector<std::uint64_t>& relation_indices,
                        std::uint64_t fibers, std::uint32_t free_vars, std::uint64_t seed);

struct GroebnerOptions {
    // 0 = full basis. When set, S-pairs above this degree are skipped; the
    // truncated basis still decides membership for homogeneous elements of
    // degree <= max_degree (inputs must be degree-homogeneous).
    std::uint64_t max_degree = 0;
    std::size_t max_basis = 20'000;
};

struct GroebnerBasis {
    std::uint64_t ell = 0;
    std::vector<std::uint32_t> vars;
    // reduced basis: monic, pairwise tail-reduced, ascending leading monomial
    std::vector<GradedPolynomial> elements;
    // elements[i] == sum_m provenance[i][m] * Q_m over the original relations
    std::vector<std::map<std::uint64_t, GradedPolynomial>> provenance;
    std::vector<std::uint64_t> relation_keys;
    std::uint64_t truncation_degree = 0;
};

// Buchberger with the normal selection strategy and the coprime / chain
// S-pair criteria; the returned basis is reduced.
GroebnerBasis buchberger(const std::map<std::uint64_t, GradedPolynomial>& relations,
                         const GroebnerOptions& options = {});

// Remainder of multivariate division by the basis. Zero iff p lies in the
// ideal (for degree-truncated bases: p must be homogeneous of degree within
// the truncation). When cofactors is given, it receives polynomials with
// p == remainder + sum_m cofactors[m] * Q_m.
GradedPolynomial normal_form(const GradedPolynomial& p, const GroebnerBasis& basis,
                             std::map<std::uint64_t, GradedPolynomial>* cofactors = nullptr);

// Same contract as membership_linear, via Buchberger + normal form.
MembershipResult membership_groebner(const GradedPolynomial& pol,
                                     const std::map<std::uint64_t, GradedPolynomial>& relations,
                                     const MembershipOptions& options = {});

struct SpecializedResult {
    bool solvable = false;
    // cofactors over the ring of the remaining (unfixed) variables
    std::map<std::uint64_t, GradedPolynomial> cofactors;
    std::string detail;
};

// Membership for pol with the fixed variables substituted; cofactor degree is
// bounded by deg(pol) - deg(Q_m). Fixing every variable degenerates to a
// point-consistency check.
SpecializedResult specialized_membership(const GradedPolynomial& pol,
                                         const std::map<std::uint64_t, GradedPolynomial>& relations,
                                         const PointAssignment& fixed,
                                         const MembershipOptions& options = {});

// Sweeps one variable over all field values, solves each specialization, and
// reconstructs candidate cofactors by Lagrange interpolation. Heuristic: the
// result is only returned after the exact witness identity has been
// re-verified; nullopt means the heuristic failed, not that membership fails.
std::optional<MembershipWitness>
specialized_membership_interpolate(const GradedPolynomial& pol,
                                   const std::map<std::uint64_t, GradedPolynomial>& relations,
                                   std::uint32_t sweep_var,
                                   const MembershipOptions& options = {});

} // namespace pcong
