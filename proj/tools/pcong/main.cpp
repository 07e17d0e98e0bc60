// pcong: discover and prove Ramanujan-type congruences p_{-a}(ell*n + r) == 0
// (mod ell). Subcommands: prove, verify, search, lemma, cheap-family,
// proposition. Exit codes: 0 success/verified, 1 method failure, 2 usage or
// internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcong/prover.hpp"
#include "pcong/search.hpp"

namespace {

using namespace pcong;

std::string default_certificate_path(std::uint64_t a, std::uint64_t ell, std::uint64_t r) {
    std::ostringstream os;
    os << "certificate_a" << a << "_l" << ell << "_r" << r << ".txt";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// "1,1,2,10,9,11,15,12" (values aligned with sorted Jset(ell)) or
// "J0=1,J1=1,...": a candidate counterexample point.
PointAssignment parse_point(const std::string& text, std::uint64_t ell) {
    ResidueSet js = jset(ell);
    PointAssignment pt;
    std::istringstream in(text);
    std::string item;
    std::vector<std::string> items;
    while (std::getline(in, item, ',')) items.push_back(item);
    if (!items.empty() && items[0].find('=') != std::string::npos) {
        for (const auto& s : items) {
            std::size_t eq = s.find('=');
            std::string key = s.substr(0, eq);
            if (key.size() < 2 || (key[0] != 'J' && key[0] != 'j'))
                throw CLI::ValidationError("--try-point", "expected Jx=value entries");
            pt[static_cast<std::uint32_t>(std::stoul(key.substr(1)))] =
                FieldElement(std::stoll(s.substr(eq + 1)), ell);
        }
    } else {
        if (items.size() != js.members.size())
            throw CLI::ValidationError("--try-point",
                                       "expected " + std::to_string(js.members.size()) +
                                           " values (one per member of Jset)");
        for (std::size_t k = 0; k < items.size(); ++k)
            pt[static_cast<std::uint32_t>(js.members[k])] =
                FieldElement(std::stoll(items[k]), ell);
    }
    return pt;
}

int run_prove(std::uint64_t a, std::uint64_t ell, std::uint64_t r, const ProveOptions& opts,
              const std::string& output, const std::string& format) {
    ProveOutcome out = prove(a, ell, r, opts);
    if (out.proved()) {
        const std::string path = output.empty() ? default_certificate_path(a, ell, r) : output;
        write_file(path, serialize_certificate(*out.certificate));
        if (format == "records") {
            std::cout << "proof a=" << a << " ell=" << ell << " r=" << r << " style="
                      << (out.certificate->style == ProofCertificate::Style::ramanujan
                              ? "ramanujan"
                              : "hirschhorn")
                      << " power=" << out.certificate->power << " certificate=" << path
                      << " seed=" << opts.seed << "\n";
        } else {
            std::cout << render_proof(*out.certificate) << "\n";
            std::cout << "certificate written to " << path << "\n";
            std::cout << "seed: " << opts.seed << "\n";
        }
        return 0;
    }
    const std::string path =
        output.empty() ? ("failure_a" + std::to_string(a) + "_l" + std::to_string(ell) + "_r" +
                          std::to_string(r) + ".txt")
                       : output;
    write_file(path, serialize_failure(*out.failure));
    if (format == "records") {
        std::cout << "failure a=" << a << " ell=" << ell << " r=" << r << " reason="
                  << (out.failure->reason == FailureReport::Reason::refuted_by_counterexample
                          ? "refuted-by-counterexample"
                          : "not-found-within-bounds")
                  << " report=" << path << " seed=" << opts.seed << "\n";
    } else {
        std::cout << render_failure(*out.failure) << "\n";
        std::cout << "failure report written to " << path << "\n";
        std::cout << "seed: " << opts.seed << "\n";
    }
    return 1;
}

int run_verify(const std::string& path, std::size_t order) {
    ProofCertificate cert = parse_certificate(read_file(path));
    VerificationReport report = verify_certificate(cert, order);
    for (const auto& c : report.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name
                  << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    std::cout << (report.all_passed() ? "verified" : "NOT verified") << " (a=" << cert.a
              << " ell=" << cert.ell << " r=" << cert.r << ", N=" << order << ")\n";
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramanujan-type congruence prover for powers of the partition"
                 " generating function"};
    app.require_subcommand(1);

    // ---- prove ----
    auto* prove_cmd = app.add_subcommand("prove", "prove p_{-a}(ell*n + r) == 0 (mod ell)");
    std::uint64_t a = 1, ell = 5, r = 4;
    ProveOptions popts;
    std::string output, format = "text", route = "auto", try_point;
    prove_cmd->add_option("-a", a, "power of the partition generating function")->required();
    prove_cmd->add_option("-l", ell, "prime modulus")->required();
    prove_cmd->add_option("-r", r, "residue class")->required();
    prove_cmd->add_option("-N,--depth", popts.series_order, "series truncation order");
    prove_cmd->add_option("--k-max", popts.k_max, "largest power of POL tried");
    prove_cmd->add_option("--route", route, "membership route: linear | groebner | auto")
        ->check(CLI::IsMember({"linear", "groebner", "auto"}));
    prove_cmd->add_option("--seed", popts.seed, "seed for the falsification search");
    prove_cmd->add_option("--trials", popts.falsification_trials,
                          "random falsification trials before membership");
    prove_cmd->add_option("--fibers", popts.falsification_fibers,
                          "structured falsification fibers (0 = off)");
    prove_cmd->add_option("--try-point", try_point,
                          "candidate counterexample point (J0=..,J1=.. or comma list)");
    prove_cmd->add_option("-o,--output", output, "certificate / report path");
    prove_cmd->add_option("--format", format, "stdout format: text | records")
        ->check(CLI::IsMember({"text", "records"}));

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate from scratch");
    std::string cert_path;
    std::size_t verify_order = 1000;
    verify_cmd->add_option("certificate", cert_path, "certificate file")->required();
    verify_cmd->add_option("-N,--depth", verify_order, "series truncation order");

    // ---- search ----
    auto* search_cmd = app.add_subcommand("search", "sweep (a, ell) for vanishing slices");
    std::uint64_t a_min = 1, a_max = 1, l_max = 47, l_min = 3;
    ScanOptions sopts;
    if (const char* env = std::getenv("PCONG_WORKERS"))
        sopts.workers = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    bool no_rule = false, do_prove = false, long_run = false;
    std::string search_format = "table";
    search_cmd->add_option("--a-min", a_min, "smallest a");
    search_cmd->add_option("--a-max", a_max, "largest a")->required();
    search_cmd->add_option("--l-max", l_max, "largest prime")->required();
    search_cmd->add_option("--l-min", l_min, "smallest prime");
    search_cmd->add_option("-N,--depth", sopts.order, "series truncation order");
    search_cmd->add_flag("--no-2a1-rule", no_rule, "drop the ell >= 2a+1 lower bound");
    search_cmd->add_flag("--prove", do_prove, "attempt proofs for the candidates");
    search_cmd->add_flag("--long-run", long_run, "allow sweeps with a > 60");
    search_cmd->add_option("--workers", sopts.workers, "worker threads (0 = auto)");
    search_cmd->add_option("--format", search_format, "table | records")
        ->check(CLI::IsMember({"table", "records"}));

    // ---- lemma ----
    auto* lemma_cmd = app.add_subcommand(
        "lemma", "check the triangular-number lemma for applicable primes");
    std::uint64_t lemma_lmax = 2000;
    lemma_cmd->add_option("--l-max", lemma_lmax, "largest prime checked")->required();

    // ---- cheap-family ----
    auto* cheap_cmd = app.add_subcommand(
        "cheap-family", "all congruences for a = ell-3 (Ramanujan style)");
    std::uint64_t cheap_ell = 11;
    std::string cheap_dir;
    std::size_t cheap_order = 1000;
    cheap_cmd->add_option("-l", cheap_ell, "prime modulus")->required();
    cheap_cmd->add_option("-N,--depth", cheap_order, "series truncation order");
    cheap_cmd->add_option("--write-dir", cheap_dir, "write one certificate per residue");

    // ---- proposition ----
    auto* prop_cmd = app.add_subcommand(
        "proposition", "the a = ell-6 instance for ell == 7, 11 (mod 12)");
    std::uint64_t prop_ell = 11;
    bool prop_prove = false;
    prop_cmd->add_option("-l", prop_ell, "prime modulus")->required();
    prop_cmd->add_flag("--prove", prop_prove, "also run the prover on the instance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        int code = app.exit(e);  // prints help / error text
        return code == 0 ? 0 : 2;
    }

    try {
        if (prove_cmd->parsed()) {
            popts.route = route == "linear"    ? ProveOptions::Route::linear
                          : route == "groebner" ? ProveOptions::Route::groebner
                                                : ProveOptions::Route::automatic;
            if (!try_point.empty()) popts.candidate_points.push_back(parse_point(try_point, ell));
            return run_prove(a, ell, r, popts, output, format);
        }
        if (verify_cmd->parsed()) {
            return run_verify(cert_path, verify_order);
        }
        if (search_cmd->parsed()) {
            if (a_max > 60 && !long_run)
                throw CLI::ValidationError("--a-max", "sweeps beyond a=60 need --long-run");
            sopts.require_ell_ge_2a1 = !no_rule;
            sopts.ell_min = l_min;
            if (long_run) {
                // progress goes to stderr; stdout stays byte-stable
                sopts.progress = [](std::uint64_t ell, std::size_t done, std::size_t total) {
                    std::cerr << "scanned ell=" << ell << " (" << done << "/" << total << ")\n";
                };
            }
            auto candidates = scan(a_min, a_max, l_max, sopts);
            if (do_prove) candidates = attempt_proofs(candidates);
            std::cout << (search_format == "records" ? format_records(candidates)
                                                     : format_table(candidates));
            return 0;
        }
        if (lemma_cmd->parsed()) {
            bool all_ok = true;
            std::uint64_t checked = 0;
            for (std::uint64_t p = 5; p <= lemma_lmax; ++p) {
                if (!is_prime(p)) continue;
                LemmaReport rep = check_elementary_lemma(p);
                if (!rep.applicable) continue;
                ++checked;
                std::cout << "lemma ell=" << p << " r=" << rep.r << " forced="
                          << rep.forced_index << " verified=" << (rep.verified ? "yes" : "no")
                          << "\n";
                all_ok = all_ok && rep.verified;
            }
            std::cout << "checked " << checked << " primes, "
                      << (all_ok ? "all verified" : "FAILURES above") << "\n";
            return all_ok ? 0 : 1;
        }
        if (cheap_cmd->parsed()) {
            ProveOptions copts;
            copts.series_order = cheap_order;
            auto certs = cheap_family(cheap_ell, copts);
            for (const auto& cert : certs) {
                std::cout << "congruence a=" << cert.a << " ell=" << cert.ell << " r=" << cert.r
                          << " style=ramanujan\n";
                if (!cheap_dir.empty())
                    write_file(cheap_dir + "/" + default_certificate_path(cert.a, cert.ell, cert.r),
                               serialize_certificate(cert));
            }
            std::cout << "total: " << certs.size() << "\n";
            return 0;
        }
        if (prop_cmd->parsed()) {
            PropositionInstance inst = proposition_instance(prop_ell);
            if (!inst.applicable) {
                std::cout << "not-applicable ell=" << prop_ell << " (ell mod 12 = "
                          << prop_ell % 12 << ")\n";
                return 0;
            }
            std::cout << "instance a=" << inst.a << " ell=" << inst.ell << " r=" << inst.r
                      << " sumset-condition=" << (inst.sumset_condition_holds ? "holds" : "FAILS")
                      << "\n";
            if (prop_prove) {
                ProveOptions qopts;
                return run_prove(inst.a, inst.ell, inst.r, qopts, "", "records");
            }
            return inst.sumset_condition_holds ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
