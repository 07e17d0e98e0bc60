#include "pcong/prover.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace pcong {

namespace {

// POL and every Q_m share repeated-squaring intermediates of the same
// generator, so powers are cached per modulus for the life of the process.
GeneratorPowerCache& generator_cache(std::uint64_t ell) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<GeneratorPowerCache>> caches;
    std::lock_guard<std::mutex> lock(mu);
    auto it = caches.find(ell);
    if (it == caches.end())
        it = caches.emplace(ell, std::make_unique<GeneratorPowerCache>(ell)).first;
    return *it->second;
}

} // namespace

GradedPolynomial build_pol(std::uint64_t a, std::uint64_t ell, std::uint64_t r,
                           std::size_t max_terms) {
    MethodParameters p = derive_parameters(a, ell);
    if (r >= ell) throw std::invalid_argument("build_pol: residue out of range");
    if (grade_unreachable(ell, p.b, r)) {
        ResidueSet js = jset(ell);
        return GradedPolynomial(ell, std::vector<std::uint32_t>(js.members.begin(),
                                                                js.members.end()));
    }
    return grade_component(generator_cache(ell).power(p.b, max_terms), r);
}

std::map<std::uint64_t, GradedPolynomial> build_relations(std::uint64_t ell,
                                                          std::size_t max_terms) {
    const std::uint64_t c = mod_inv(3, ell);
    const GradedPolynomial& gc = generator_cache(ell).power(c, max_terms);
    std::map<std::uint64_t, GradedPolynomial> rel;
    for (std::uint64_t m : complement(eset(ell)).members)
        rel.emplace(m, grade_component(gc, m));
    return rel;
}

bool grade_unreachable(std::uint64_t ell, std::uint64_t b, std::uint64_t r) {
    ResidueSet js = jset(ell);
    std::vector<char> reach(ell, 0), next(ell, 0);
    reach[0] = 1;
    for (std::uint64_t step = 0; step < b; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (std::uint64_t g = 0; g < ell; ++g) {
            if (!reach[g]) continue;
            for (std::uint64_t i : js.members) next[(g + i) % ell] = 1;
        }
        reach.swap(next);
    }
    return !reach[r];
}

namespace {

ProofCertificate make_certificate(std::uint64_t a, std::uint64_t ell, std::uint64_t r,
                                  const MethodParameters& params,
                                  ProofCertificate::Style style, std::size_t order) {
    ProofCertificate cert;
    cert.a = a;
    cert.ell = ell;
    cert.r = r;
    cert.params = params;
    cert.style = style;
    cert.series_order = order;
    return cert;
}

} // namespace

ProveOutcome prove(std::uint64_t a, std::uint64_t ell, std::uint64_t r,
                   const ProveOptions& options) {
    MethodParameters params = derive_parameters(a, ell);
    if (r >= ell) throw std::invalid_argument("prove: residue out of range");
    ProveOutcome outcome;

    auto fail = [&](FailureReport::Reason reason, std::string detail,
                    std::optional<CounterexamplePoint> cex) {
        FailureReport rep;
        rep.a = a;
        rep.ell = ell;
        rep.r = r;
        rep.params = params;
        rep.reason = reason;
        rep.detail = std::move(detail);
        rep.counterexample = std::move(cex);
        rep.k_max = options.k_max;
        outcome.failure = std::move(rep);
        return outcome;
    };

    auto finish = [&](ProofCertificate cert) {
        if (options.verify_in_pipeline) {
            VerificationReport vr = verify_certificate(cert, options.series_order);
            if (!vr.all_passed()) {
                std::string what = "prove: internal error, certificate failed verification:";
                for (const auto& c : vr.checks)
                    if (!c.passed) what += " [" + c.name + "] " + c.detail;
                throw std::logic_error(what);
            }
        }
        outcome.certificate = std::move(cert);
        return outcome;
    };

    // Ramanujan style: the grade-r component of generator^b vanishes
    GradedPolynomial pol;
    try {
        pol = build_pol(a, ell, r, options.max_poly_terms);
    } catch (const resource_limit_error& e) {
        return fail(FailureReport::Reason::not_found_within_bounds,
                    std::string("POL exceeds the size budget: ") + e.what(), std::nullopt);
    }
    if (pol.is_zero())
        return finish(make_certificate(a, ell, r, params, ProofCertificate::Style::ramanujan,
                                       options.series_order));

    std::map<std::uint64_t, GradedPolynomial> relations;
    try {
        relations = build_relations(ell, options.max_poly_terms);
    } catch (const resource_limit_error& e) {
        return fail(FailureReport::Reason::not_found_within_bounds,
                    std::string("relations exceed the size budget: ") + e.what(), std::nullopt);
    }

    // falsification first: a valid counterexample point settles every power.
    // Candidate points are shared across instances, so keep only the ones
    // that live in this field.
    std::vector<PointAssignment> candidates;
    for (const auto& pt : options.candidate_points) {
        bool match = !pt.empty();
        for (const auto& [i, v] : pt)
            if (i >= ell || v.modulus() != ell) match = false;
        if (match) candidates.push_back(pt);
    }
    const std::uint64_t trials = options.falsification_trials + candidates.size();
    if (trials > 0) {
        if (auto cex = random_point_search(pol, relations, trials, options.seed, candidates)) {
            return fail(FailureReport::Reason::refuted_by_counterexample,
                        "a point with all Q_m = 0 but POL != 0 exists", std::move(cex));
        }
    }
    if (options.falsification_fibers) {
        std::vector<std::uint64_t> rel_idx;
        for (const auto& [m, q] : relations) {
            (void)q;
            rel_idx.push_back(m);
        }
        if (auto cex = structured_point_search(ell, params.b, r, params.c, rel_idx,
                                               options.falsification_fibers,
                                               options.falsification_free_vars, options.seed)) {
            return fail(FailureReport::Reason::refuted_by_counterexample,
                        "a point with all Q_m = 0 but POL != 0 exists", std::move(cex));
        }
    }

    MembershipOptions mopt;
    mopt.k_max = options.k_max;
    mopt.max_system_cells = options.max_system_cells;
    mopt.max_poly_terms = options.max_poly_terms;

    MembershipResult res;
    switch (options.route) {
        case ProveOptions::Route::linear:
            res = membership_linear(pol, relations, mopt);
            break;
        case ProveOptions::Route::groebner:
            res = membership_groebner(pol, relations, mopt);
            break;
        case ProveOptions::Route::automatic:
            res = membership_linear(pol, relations, mopt);
            if (res.status == MembershipStatus::resource_bounded) {
                MembershipResult alt = membership_groebner(pol, relations, mopt);
                if (alt.status == MembershipStatus::witness_found ||
                    alt.status == MembershipStatus::not_found)
                    res = std::move(alt);
            }
            break;
    }

    if (res.status == MembershipStatus::witness_found) {
        ProofCertificate cert = make_certificate(a, ell, r, params,
                                                 ProofCertificate::Style::hirschhorn,
                                                 options.series_order);
        cert.power = res.witness->power;
        cert.cofactors = std::move(res.witness->cofactors);
        return finish(std::move(cert));
    }
    if (res.status == MembershipStatus::refuted) {
        return fail(FailureReport::Reason::refuted_by_counterexample,
                    "a point with all Q_m = 0 but POL != 0 exists", std::move(res.refutation));
    }
    std::string detail = res.status == MembershipStatus::not_found
                             ? "no witness for any power k <= " + std::to_string(options.k_max)
                             : "membership undecided: " + res.detail;
    return fail(FailureReport::Reason::not_found_within_bounds, std::move(detail), std::nullopt);
}

VerificationReport verify_certificate(const ProofCertificate& cert, std::size_t order) {
    // polynomial rebuilds are capped so a malformed certificate cannot make
    // the verifier allocate without bound
    constexpr std::size_t kVerifyTermCap = 4'000'000;
    VerificationReport report;
    auto add = [&](const std::string& name, bool ok, std::string detail) {
        report.checks.push_back(VerificationCheck{name, ok, std::move(detail)});
    };

    // (i) parameter identities
    MethodParameters expect;
    bool params_ok = false;
    std::string params_detail;
    try {
        expect = derive_parameters(cert.a, cert.ell);
        params_ok = expect.alpha == cert.params.alpha && expect.b == cert.params.b &&
                    expect.c == cert.params.c && expect.d == cert.params.d &&
                    expect.ell == cert.params.ell && expect.a == cert.params.a &&
                    3 * cert.params.b + cert.a == cert.params.alpha * cert.ell &&
                    (3 * cert.params.c) % cert.ell == 1 &&
                    cert.params.d * cert.ell == 3 * cert.params.c - 1;
        if (!params_ok) params_detail = "stored parameters disagree with re-derivation";
    } catch (const std::exception& e) {
        params_detail = e.what();
    }
    add("parameters", params_ok, params_detail);
    if (!params_ok) return report;

    // (ii) the defining polynomial identity for the style
    if (cert.style == ProofCertificate::Style::ramanujan) {
        bool zero = false;
        std::string detail;
        try {
            zero = build_pol(cert.a, cert.ell, cert.r, kVerifyTermCap).is_zero();
            if (!zero) detail = "POL is not identically zero";
        } catch (const std::exception& e) {
            detail = e.what();
        }
        add("polynomial-identity", zero, detail);
    } else {
        bool ok = false;
        std::string detail;
        try {
            GradedPolynomial pol = build_pol(cert.a, cert.ell, cert.r, kVerifyTermCap);
            if (pol.is_zero()) {
                detail = "hirschhorn certificate for identically zero POL";
            } else {
                std::map<std::uint64_t, GradedPolynomial> relations =
                    build_relations(cert.ell, kVerifyTermCap);
                MembershipWitness w;
                w.target = power(pol, cert.power, kVerifyTermCap);
                w.power = cert.power;
                w.cofactors = cert.cofactors;
                ok = witness_identity_holds(w, relations, &detail);
            }
        } catch (const std::exception& e) {
            detail = e.what();
        }
        add("polynomial-identity", ok, detail);
    }

    // (iii) the congruence itself on the series
    {
        bool ok = true;
        std::string detail;
        TruncatedSeries series = p_minus_a(cert.a, order, cert.ell);
        auto slice = arith_progression_slice(series, cert.r);
        for (std::size_t n = 0; n < slice.size(); ++n) {
            if (!slice[n].is_zero()) {
                ok = false;
                detail = "p_{-a}(ell*" + std::to_string(n) + " + r) != 0 mod ell";
                break;
            }
        }
        add("series-congruence", ok, detail);
    }

    // (iv) each Q_m vanishes as a series: the residue components of
    // (E(q)^3)^c outside Eset(ell) must be zero
    {
        bool ok = true;
        std::string detail;
        TruncatedSeries cube_c = power(jacobi_cube_series(order, cert.ell), cert.params.c);
        for (std::uint64_t m : complement(eset(cert.ell)).members) {
            if (!residue_component(cube_c, m).is_zero()) {
                ok = false;
                detail = "Q_" + std::to_string(m) + " does not vanish as a series";
                break;
            }
        }
        add("relation-series", ok, detail);
    }

    return report;
}

std::vector<ProofCertificate> cheap_family(std::uint64_t ell, const ProveOptions& options) {
    if (ell < 5 || !is_prime(ell))
        throw std::invalid_argument("cheap_family: ell must be a prime >= 5");
    const std::uint64_t a = ell - 3;
    std::vector<ProofCertificate> certs;
    for (std::uint64_t r : complement(jset(ell)).members) {
        ProveOutcome out = prove(a, ell, r, options);
        if (!out.proved() || out.certificate->style != ProofCertificate::Style::ramanujan)
            throw std::logic_error("cheap_family: expected a ramanujan certificate for r="
                                   + std::to_string(r));
        certs.push_back(std::move(*out.certificate));
    }
    return certs;
}

PropositionInstance proposition_instance(std::uint64_t ell) {
    if (!is_prime(ell) || ell == 2)
        throw std::invalid_argument("proposition_instance: ell must be an odd prime");
    PropositionInstance inst;
    inst.ell = ell;
    inst.applicable = (ell % 12 == 7 || ell % 12 == 11);
    if (!inst.applicable) return inst;
    inst.a = ell - 6;
    inst.r = mod_mul((ell - 6) % ell, mod_inv(24 % ell, ell), ell);
    ResidueSet js = jset(ell);
    inst.sumset_condition_holds = !sumset(js, js).contains(inst.r);
    return inst;
}

LemmaReport check_elementary_lemma(std::uint64_t ell) {
    if (!is_prime(ell) || ell == 2)
        throw std::invalid_argument("check_elementary_lemma: ell must be an odd prime");
    LemmaReport rep;
    rep.ell = ell;
    rep.applicable = (ell % 12 == 7 || ell % 12 == 11);
    if (!rep.applicable) return rep;
    rep.r = mod_mul((ell - 6) % ell, mod_inv(24 % ell, ell), ell);
    rep.forced_index = (ell - 1) / 2;

    // bucket n by T(n) mod ell; every solution pair must use the forced index
    std::vector<std::vector<std::uint32_t>> bucket(ell);
    for (std::uint64_t n = 0; n < ell; ++n)
        bucket[(n * (n + 1) / 2) % ell].push_back(static_cast<std::uint32_t>(n));
    rep.verified = true;
    for (std::uint64_t n1 = 0; n1 < ell && rep.verified; ++n1) {
        const std::uint64_t t1 = (n1 * (n1 + 1) / 2) % ell;
        const std::uint64_t need = mod_sub(rep.r, t1, ell);
        for (std::uint32_t n2 : bucket[need]) {
            if (n1 != rep.forced_index && n2 != rep.forced_index) {
                rep.verified = false;
                break;
            }
        }
    }
    return rep;
}

} // namespace pcong
