#include "pcong/search.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace pcong {

std::string status_name(CongruenceCandidate::Status s) {
    switch (s) {
        case CongruenceCandidate::Status::empirical: return "empirical";
        case CongruenceCandidate::Status::proved_ramanujan: return "proved-ramanujan";
        case CongruenceCandidate::Status::proved_hirschhorn: return "proved-hirschhorn";
        case CongruenceCandidate::Status::disproved: return "disproved";
    }
    return "?";
}

namespace {

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = std::max<std::uint64_t>(lo, 3); p <= hi; ++p)
        if (p % 2 == 1 && is_prime(p)) out.push_back(p);
    return out;
}

// all vanishing residues for one (a-range, ell) cell; p_{-a} is built
// incrementally from 1/E by repeated multiplication
void scan_cell(std::uint64_t ell, std::uint64_t a_min, std::uint64_t a_max,
               const ScanOptions& opt, std::vector<CongruenceCandidate>& out) {
    const std::size_t order = opt.order;
    TruncatedSeries inv_e = inverse(euler_product(order, ell));
    TruncatedSeries p = TruncatedSeries::constant(1, ell, order);
    for (std::uint64_t a = 1; a <= a_max; ++a) {
        p = p * inv_e;
        if (a < a_min) continue;
        if (opt.require_ell_ge_2a1 && ell < 2 * a + 1) continue;
        for (std::uint64_t r = 0; r < ell; ++r) {
            bool all_zero = r <= order;  // an empty slice is no evidence
            std::uint64_t n_max = 0;
            const auto& raw = p.raw();
            for (std::size_t k = r, n = 0; k <= order; k += ell, ++n) {
                if (raw[k]) {
                    all_zero = false;
                    break;
                }
                n_max = n;
            }
            if (all_zero) {
                CongruenceCandidate c;
                c.a = a;
                c.ell = ell;
                c.r = r;
                c.tested_up_to = n_max;
                out.push_back(std::move(c));
            }
        }
    }
}

} // namespace

std::vector<CongruenceCandidate> scan(std::uint64_t a_min, std::uint64_t a_max,
                                      std::uint64_t ell_max, const ScanOptions& options) {
    if (a_min < 1 || a_max < a_min)
        throw std::invalid_argument("scan: bad a range");
    if (options.order < 10 * ell_max)
        throw std::invalid_argument("scan: order must be at least 10 * ell_max");
    const std::vector<std::uint64_t> ells = primes_in(options.ell_min, ell_max);

    unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, std::max<std::size_t>(ells.size(), 1));

    std::atomic<std::size_t> done{0};
    auto tick = [&](std::uint64_t ell) {
        const std::size_t d = done.fetch_add(1) + 1;
        if (options.progress) options.progress(ell, d, ells.size());
    };

    std::vector<std::vector<CongruenceCandidate>> partial(ells.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < ells.size(); ++i) {
            scan_cell(ells[i], a_min, a_max, options, partial[i]);
            tick(ells[i]);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= ells.size()) break;
                    scan_cell(ells[i], a_min, a_max, options, partial[i]);
                    tick(ells[i]);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<CongruenceCandidate> out;
    for (auto& block : partial)
        for (auto& c : block) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(), [](const CongruenceCandidate& x, const CongruenceCandidate& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.ell != y.ell) return x.ell < y.ell;
        return x.r < y.r;
    });
    return out;
}

CongruenceCandidate check_candidate(std::uint64_t a, std::uint64_t ell, std::uint64_t r,
                                    std::size_t order) {
    CongruenceCandidate c;
    c.a = a;
    c.ell = ell;
    c.r = r;
    TruncatedSeries p = p_minus_a(a, order, ell);
    auto slice = arith_progression_slice(p, r);
    for (std::size_t n = 0; n < slice.size(); ++n) {
        if (!slice[n].is_zero()) {
            c.status = CongruenceCandidate::Status::disproved;
            c.disproof_n = n;
            c.tested_up_to = n;
            return c;
        }
    }
    c.status = CongruenceCandidate::Status::empirical;
    c.tested_up_to = slice.empty() ? 0 : slice.size() - 1;
    return c;
}

std::vector<CongruenceCandidate> attempt_proofs(std::vector<CongruenceCandidate> candidates,
                                                const ProveOptions& options,
                                                std::uint64_t prove_ell_limit) {
    for (auto& c : candidates) {
        if (c.status != CongruenceCandidate::Status::empirical) continue;
        if (c.ell > prove_ell_limit) continue;
        ProveOutcome out = prove(c.a, c.ell, c.r, options);
        if (out.proved()) {
            c.status = out.certificate->style == ProofCertificate::Style::ramanujan
                           ? CongruenceCandidate::Status::proved_ramanujan
                           : CongruenceCandidate::Status::proved_hirschhorn;
        } else {
            c.failure = std::move(out.failure);
        }
    }
    return candidates;
}

std::string format_table(const std::vector<CongruenceCandidate>& candidates) {
    std::ostringstream os;
    os << "   a  ell    r  tested-up-to  status\n";
    for (const auto& c : candidates) {
        os.width(4);
        os << c.a;
        os.width(5);
        os << c.ell;
        os.width(5);
        os << c.r;
        os.width(14);
        os << c.tested_up_to;
        os << "  " << status_name(c.status);
        if (c.disproof_n) os << " (n = " << *c.disproof_n << ")";
        os << "\n";
    }
    os << "total: " << candidates.size() << "\n";
    return os.str();
}

std::string format_records(const std::vector<CongruenceCandidate>& candidates) {
    std::ostringstream os;
    for (const auto& c : candidates) {
        os << "candidate a=" << c.a << " ell=" << c.ell << " r=" << c.r
           << " tested-up-to=" << c.tested_up_to << " status=" << status_name(c.status);
        if (c.disproof_n) os << " disproof-n=" << *c.disproof_n;
        os << "\n";
    }
    return os.str();
}

} // namespace pcong
