#pragma once

// Empirical congruence discovery: sweep (a, ell), slice p_{-a} mod ell on
// arithmetic progressions, report the candidates whose slices vanish for
// every tested n, and optionally pipe them through the prover.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcong/prover.hpp"

namespace pcong {

struct CongruenceCandidate {
    std::uint64_t a = 0, ell = 0, r = 0;
    std::uint64_t tested_up_to = 0;  // largest n checked
    enum class Status { empirical, proved_ramanujan, proved_hirschhorn, disproved } status =
        Status::empirical;
    std::optional<std::uint64_t> disproof_n;  // witness index for disproved
    std::optional<FailureReport> failure;     // attached when a proof attempt failed
};

std::string status_name(CongruenceCandidate::Status s);

struct ScanOptions {
    std::size_t order = 1000;       // truncation N; slices test n <= (N-r)/ell
    bool require_ell_ge_2a1 = true; // the default prime lower bound rule
    std::uint64_t ell_min = 3;      // plain lower bound, applied either way
    unsigned workers = 0;           // 0 = hardware concurrency
    // called after each (ell) cell finishes, e.g. for long-sweep progress;
    // must be thread-safe, never touches the result stream
    std::function<void(std::uint64_t ell, std::size_t done, std::size_t total)> progress;
};

// Every (a, ell) cell with a in [a_min, a_max], ell prime in
// [max(ell_min, 2a+1 if the rule is on), ell_max]. Requires
// order >= 10 * ell_max so every slice carries real evidence. Deterministic
// output order: sorted by (a, ell, r), independent of worker count.
std::vector<CongruenceCandidate> scan(std::uint64_t a_min, std::uint64_t a_max,
                                      std::uint64_t ell_max, const ScanOptions& options = {});

// Re-test one candidate: empirical if the whole slice vanishes up to the
// order, otherwise disproved with the first witness n.
CongruenceCandidate check_candidate(std::uint64_t a, std::uint64_t ell, std::uint64_t r,
                                    std::size_t order);

// Upgrade each candidate's status per the prover outcome; failures leave the
// candidate empirical with the report attached. Candidates whose ell exceeds
// prove_ell_limit are left untouched (their instances grow combinatorially).
std::vector<CongruenceCandidate> attempt_proofs(std::vector<CongruenceCandidate> candidates,
                                                const ProveOptions& options = {},
                                                std::uint64_t prove_ell_limit = 17);

// Human-readable table and machine-readable line-delimited records.
std::string format_table(const std::vector<CongruenceCandidate>& candidates);
std::string format_records(const std::vector<CongruenceCandidate>& candidates);

} // namespace pcong
