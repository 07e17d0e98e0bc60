#pragma once

// End-to-end proof pipeline for a candidate congruence p_{-a}(ell*n + r) == 0
// (mod ell): derive parameters, build POL and the relations {Q_m}, try a
// Ramanujan-style proof (POL identically zero), fall back to Hirschhorn-style
// ideal membership, and emit self-contained certificates that a verifier can
// re-check without re-running any search.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcong/ideals.hpp"
#include "pcong/residues.hpp"

namespace pcong {

inline constexpr const char* kToolVersion = "pcong 0.1.0";

struct ProofCertificate {
    std::uint64_t a = 0, ell = 0, r = 0;
    MethodParameters params;
    enum class Style { ramanujan, hirschhorn } style = Style::ramanujan;
    // hirschhorn only: POL^power == sum cofactors[m] * Q_m
    std::uint32_t power = 1;
    std::map<std::uint64_t, GradedPolynomial> cofactors;
    std::size_t series_order = 0;  // N used for the numerical checks
    std::string tool_version = kToolVersion;
};

struct FailureReport {
    std::uint64_t a = 0, ell = 0, r = 0;
    MethodParameters params;
    enum class Reason {
        refuted_by_counterexample,   // definitive: no power of POL is in the ideal
        not_found_within_bounds      // no witness within the configured k/size budget
    } reason = Reason::not_found_within_bounds;
    std::optional<CounterexamplePoint> counterexample;
    std::uint32_t k_max = 0;
    std::string detail;
};

struct ProveOutcome {
    std::optional<ProofCertificate> certificate;
    std::optional<FailureReport> failure;
    bool proved() const { return certificate.has_value(); }
};

struct ProveOptions {
    std::size_t series_order = 1000;
    std::uint32_t k_max = 3;
    enum class Route { automatic, linear, groebner } route = Route::automatic;
    std::uint64_t seed = 1;
    std::uint64_t falsification_trials = 2000;
    // extra structured falsification: random fibers scanned exhaustively
    std::uint64_t falsification_fibers = 0;
    std::uint32_t falsification_free_vars = 2;
    // candidate counterexample points, tried before anything expensive
    std::vector<PointAssignment> candidate_points;
    std::uint64_t max_system_cells = 32'000'000;
    std::size_t max_poly_terms = 2'000'000;
    bool verify_in_pipeline = true;
};

// grade-r component of generator(ell)^b for the parameters of (a, ell);
// max_terms = 0 means unlimited.
GradedPolynomial build_pol(std::uint64_t a, std::uint64_t ell, std::uint64_t r,
                           std::size_t max_terms = 0);

// Q_m = grade-m component of generator(ell)^c for every m outside Eset(ell).
std::map<std::uint64_t, GradedPolynomial> build_relations(std::uint64_t ell,
                                                          std::size_t max_terms = 0);

// True when no product of b residues from Jset(ell) hits r mod ell; then the
// grade-r component of generator^b is empty and POL == 0 without building it.
bool grade_unreachable(std::uint64_t ell, std::uint64_t b, std::uint64_t r);

ProveOutcome prove(std::uint64_t a, std::uint64_t ell, std::uint64_t r,
                   const ProveOptions& options = {});

struct VerificationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Re-checks a certificate from scratch: (i) parameter identities, (ii) the
// defining polynomial identity for the style, (iii) the congruence itself on
// the series up to q^order, (iv) each Q_m vanishing as a series up to order.
VerificationReport verify_certificate(const ProofCertificate& cert, std::size_t order);

// a = ell - 3: one Ramanujan-style certificate per r outside Jset(ell).
std::vector<ProofCertificate> cheap_family(std::uint64_t ell, const ProveOptions& options = {});

struct PropositionInstance {
    std::uint64_t ell = 0;
    bool applicable = false;       // ell == 7 or 11 (mod 12)
    std::uint64_t a = 0;           // ell - 6
    std::uint64_t r = 0;           // (ell-6)/24 mod ell
    bool sumset_condition_holds = false;  // r not in Jset + Jset
};

PropositionInstance proposition_instance(std::uint64_t ell);

struct LemmaReport {
    std::uint64_t ell = 0;
    bool applicable = false;
    std::uint64_t r = 0;
    std::uint64_t forced_index = 0;  // (ell-1)/2
    bool verified = false;
};

// Every pair T(n1)+T(n2) == r (mod ell) must involve index (ell-1)/2.
LemmaReport check_elementary_lemma(std::uint64_t ell);

// ---- certificate and report serialization (stable field order) -------------

std::string serialize_certificate(const ProofCertificate& cert);
ProofCertificate parse_certificate(const std::string& text);

std::string serialize_failure(const FailureReport& report);

// Human-readable proof narrative: statement, parameter derivation, the
// polynomial identity, QED.
std::string render_proof(const ProofCertificate& cert);
std::string render_failure(const FailureReport& report);

} // namespace pcong
