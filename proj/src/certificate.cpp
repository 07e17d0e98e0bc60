#include <sstream>

#include "pcong/prover.hpp"

// Certificate wire format: a single structured-text document with a stable
// field order, so byte-identical output for identical inputs and trivial
// golden-file testing. Polynomials use the canonical rendering.

namespace pcong {

namespace {

constexpr const char* kCertHeader = "pcong certificate v1";
constexpr const char* kFailureHeader = "pcong failure-report v1";
constexpr const char* kEnd = "end";

std::string style_name(ProofCertificate::Style s) {
    return s == ProofCertificate::Style::ramanujan ? "ramanujan" : "hirschhorn";
}

std::vector<std::uint32_t> ring_variables(std::uint64_t ell) {
    ResidueSet js = jset(ell);
    return std::vector<std::uint32_t>(js.members.begin(), js.members.end());
}

class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    std::string next() {
        std::string line;
        while (std::getline(in_, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            ++lineno_;
            return line;
        }
        throw std::invalid_argument("certificate: unexpected end of document");
    }

    // "key: value" with an exact key
    std::string expect(const std::string& key) {
        std::string line = next();
        const std::string prefix = key + ":";
        if (line.compare(0, prefix.size(), prefix) != 0)
            throw std::invalid_argument("certificate: expected '" + key + ":' on line "
                                        + std::to_string(lineno_));
        std::string value = line.substr(prefix.size());
        if (!value.empty() && value.front() == ' ') value.erase(0, 1);
        return value;
    }

    std::uint64_t expect_number(const std::string& key) {
        const std::string v = expect(key);
        try {
            return std::stoull(v);
        } catch (...) {
            throw std::invalid_argument("certificate: bad number for '" + key + "'");
        }
    }

    void expect_literal(const std::string& lit) {
        if (next() != lit)
            throw std::invalid_argument("certificate: expected '" + lit + "' on line "
                                        + std::to_string(lineno_));
    }

private:
    std::istringstream in_;
    std::size_t lineno_ = 0;
};

} // namespace

std::string serialize_certificate(const ProofCertificate& cert) {
    std::ostringstream os;
    os << kCertHeader << "\n";
    os << "style: " << style_name(cert.style) << "\n";
    os << "a: " << cert.a << "\n";
    os << "ell: " << cert.ell << "\n";
    os << "r: " << cert.r << "\n";
    os << "alpha: " << cert.params.alpha << "\n";
    os << "b: " << cert.params.b << "\n";
    os << "c: " << cert.params.c << "\n";
    os << "d: " << cert.params.d << "\n";
    os << "series-order: " << cert.series_order << "\n";
    os << "tool: " << cert.tool_version << "\n";
    if (cert.style == ProofCertificate::Style::hirschhorn) {
        os << "power: " << cert.power << "\n";
        os << "variables:";
        for (std::uint32_t v : ring_variables(cert.ell)) os << " J" << v;
        os << "\n";
        os << "cofactors: " << cert.cofactors.size() << "\n";
        for (const auto& [m, rm] : cert.cofactors)
            os << "cofactor " << m << ": " << to_string(rm) << "\n";
    }
    os << kEnd << "\n";
    return os.str();
}

ProofCertificate parse_certificate(const std::string& text) {
    LineReader lr(text);
    lr.expect_literal(kCertHeader);
    ProofCertificate cert;
    const std::string style = lr.expect("style");
    if (style == "ramanujan") {
        cert.style = ProofCertificate::Style::ramanujan;
    } else if (style == "hirschhorn") {
        cert.style = ProofCertificate::Style::hirschhorn;
    } else {
        throw std::invalid_argument("certificate: unknown style '" + style + "'");
    }
    cert.a = lr.expect_number("a");
    cert.ell = lr.expect_number("ell");
    cert.r = lr.expect_number("r");
    cert.params.ell = cert.ell;
    cert.params.a = cert.a;
    cert.params.alpha = lr.expect_number("alpha");
    cert.params.b = lr.expect_number("b");
    cert.params.c = lr.expect_number("c");
    cert.params.d = lr.expect_number("d");
    cert.series_order = lr.expect_number("series-order");
    cert.tool_version = lr.expect("tool");
    if (cert.style == ProofCertificate::Style::hirschhorn) {
        cert.power = static_cast<std::uint32_t>(lr.expect_number("power"));
        if (cert.power < 1) throw std::invalid_argument("certificate: power must be >= 1");
        std::vector<std::uint32_t> vars = ring_variables(cert.ell);
        std::ostringstream want;
        want << "variables:";
        for (std::uint32_t v : vars) want << " J" << v;
        std::ostringstream got;
        got << "variables: " << lr.expect("variables");
        if (got.str() != want.str())
            throw std::invalid_argument("certificate: variable list does not match Jset(ell)");
        const std::uint64_t count = lr.expect_number("cofactors");
        for (std::uint64_t i = 0; i < count; ++i) {
            std::string line = lr.next();
            const std::string prefix = "cofactor ";
            if (line.compare(0, prefix.size(), prefix) != 0)
                throw std::invalid_argument("certificate: expected a cofactor line");
            std::size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("certificate: malformed cofactor line");
            std::uint64_t m = 0;
            try {
                m = std::stoull(line.substr(prefix.size(), colon - prefix.size()));
            } catch (...) {
                throw std::invalid_argument("certificate: bad cofactor index");
            }
            if (m >= cert.ell || cert.cofactors.count(m))
                throw std::invalid_argument("certificate: bad or repeated cofactor index");
            cert.cofactors.emplace(m, parse_polynomial(line.substr(colon + 1), cert.ell, vars));
        }
    }
    lr.expect_literal(kEnd);
    return cert;
}

std::string serialize_failure(const FailureReport& report) {
    std::ostringstream os;
    os << kFailureHeader << "\n";
    os << "a: " << report.a << "\n";
    os << "ell: " << report.ell << "\n";
    os << "r: " << report.r << "\n";
    os << "alpha: " << report.params.alpha << "\n";
    os << "b: " << report.params.b << "\n";
    os << "c: " << report.params.c << "\n";
    os << "d: " << report.params.d << "\n";
    os << "k-max: " << report.k_max << "\n";
    os << "reason: "
       << (report.reason == FailureReport::Reason::refuted_by_counterexample
               ? "refuted-by-counterexample"
               : "not-found-within-bounds")
       << "\n";
    os << "detail: " << report.detail << "\n";
    if (report.counterexample) {
        os << "point:";
        for (const auto& [i, v] : report.counterexample->assignment)
            os << " J" << i << "=" << v.value();
        os << "\n";
        os << "pol-value: " << report.counterexample->pol_value.value() << "\n";
        for (const auto& [m, v] : report.counterexample->q_values)
            os << "q-value " << m << ": " << v.value() << "\n";
    }
    os << kEnd << "\n";
    return os.str();
}

namespace {

std::string congruence_statement(std::uint64_t a, std::uint64_t ell, std::uint64_t r) {
    std::ostringstream os;
    os << "p_{-" << a << "}(" << ell << "n + " << r << ") == 0 (mod " << ell << ")";
    return os.str();
}

std::string residue_list(const std::vector<std::uint64_t>& v) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "}";
    return os.str();
}

void render_setup(std::ostringstream& os, const MethodParameters& p) {
    os << "Setup. With alpha = " << p.alpha << " and b = (alpha*" << p.ell << " - " << p.a
       << ")/3 = " << p.b << ",\n"
       << "    1/E(q)^" << p.a << " = (E(q)^3)^" << p.b << " / E(q)^" << p.alpha * p.ell
       << " == (E(q)^3)^" << p.b << " / E(q^" << p.ell << ")^" << p.alpha << " (mod " << p.ell
       << "),\n"
       << "using E(q)^" << p.ell << " == E(q^" << p.ell << ") (mod " << p.ell << "). "
       << "Split E(q)^3 by exponent residue mod " << p.ell << ":\n"
       << "    E(q)^3 == ";
    ResidueSet js = jset(p.ell);
    for (std::size_t i = 0; i < js.members.size(); ++i)
        os << (i ? " + " : "") << "J" << js.members[i];
    os << " (mod " << p.ell << "),   Jset(" << p.ell << ") = " << residue_list(js.members)
       << ",\n"
       << "where J_i collects the terms with exponent congruent to i. A product of b = " << p.b
       << " of the J_i contributes only exponents congruent to the sum of their indices, so the"
          " residue-r terms of (E(q)^3)^"
       << p.b << " are governed by POL, the grade-" << "r" << " part of ("
       << "sum J_i t^i)^" << p.b << " mod (t^" << p.ell << " - 1).\n";
}

} // namespace

std::string render_proof(const ProofCertificate& cert) {
    std::ostringstream os;
    os << "Theorem. For every n >= 0, " << congruence_statement(cert.a, cert.ell, cert.r)
       << ".\n\n";
    render_setup(os, cert.params);
    os << "\n";
    if (cert.style == ProofCertificate::Style::ramanujan) {
        os << "Proof (Ramanujan style). For r = " << cert.r
           << " the grade-r part is identically zero: no product of " << cert.params.b
           << " residues from Jset(" << cert.ell << ") is congruent to " << cert.r << " mod "
           << cert.ell << " with a surviving coefficient. Exponents congruent to " << cert.r
           << " therefore never occur in (E(q)^3)^" << cert.params.b << ", hence not in 1/E(q)^"
           << cert.a << " either, which is that power series times the"
           << " residue-0-supported unit E(q^" << cert.ell << ")^(-" << cert.params.alpha
           << "). QED.\n";
        return os.str();
    }

    GradedPolynomial pol = build_pol(cert.a, cert.ell, cert.r);
    std::map<std::uint64_t, GradedPolynomial> relations = build_relations(cert.ell);
    os << "Here POL is not identically zero:\n    POL = " << to_string(pol) << "\n\n";
    os << "Relations. With c = " << cert.params.c << " (the inverse of 3 mod " << cert.ell
       << ") and d = " << cert.params.d << ":\n"
       << "    (E(q)^3)^" << cert.params.c << " = E(q) * E(q)^" << cert.params.d * cert.ell
       << " == E(q) * E(q^" << cert.ell << ")^" << cert.params.d << " (mod " << cert.ell
       << "),\n"
       << "and the exponent residues of the right side lie in Eset(" << cert.ell << ") = "
       << residue_list(eset(cert.ell).members) << ". For each m in the complement "
       << residue_list(complement(eset(cert.ell)).members) << ", the grade-m part Q_m of (sum"
       << " J_i t^i)^" << cert.params.c << " therefore vanishes as a q-series:\n";
    for (const auto& [m, q] : relations)
        os << "    Q_" << m << " = " << to_string(q) << "\n";
    os << "\nWitness. Exact polynomial arithmetic over GF(" << cert.ell << ") confirms\n    POL"
       << (cert.power > 1 ? "^" + std::to_string(cert.power) : "") << " == ";
    bool first = true;
    for (const auto& [m, rm] : cert.cofactors) {
        if (rm.is_zero()) continue;
        os << (first ? "" : " + ") << "R_" << m << " * Q_" << m;
        first = false;
    }
    os << ", with\n";
    for (const auto& [m, rm] : cert.cofactors) {
        if (rm.is_zero()) continue;
        os << "    R_" << m << " = " << to_string(rm) << "\n";
    }
    os << "\nEvery Q_m is 0 as a q-series, so POL"
       << (cert.power > 1 ? "^" + std::to_string(cert.power) : "")
       << " is too; since the series ring over GF(" << cert.ell
       << ") has no zero divisors, POL itself vanishes as a q-series. Exponents congruent to "
       << cert.r << " mod " << cert.ell << " therefore never survive in (E(q)^3)^"
       << cert.params.b << ", hence not in 1/E(q)^" << cert.a << ". QED.\n";
    return os.str();
}

std::string render_failure(const FailureReport& report) {
    std::ostringstream os;
    os << "No proof found for " << congruence_statement(report.a, report.ell, report.r)
       << ".\n\n";
    render_setup(os, report.params);
    os << "\n";
    if (report.reason == FailureReport::Reason::refuted_by_counterexample) {
        os << "Refutation. POL does not lie in the ideal generated by the Q_m, nor does any"
              " power of it: at the specialization\n    ";
        for (const auto& [i, v] : report.counterexample->assignment)
            os << "J" << i << "=" << v.value() << " ";
        os << "\nevery Q_m evaluates to 0 while POL evaluates to "
           << report.counterexample->pol_value.value() << " != 0 (mod " << report.ell
           << "). Any identity POL^k == sum R_m Q_m would force POL^k to vanish there."
           << " This method cannot prove the congruence; the congruence itself may still hold"
           << " (the series checks are consistent with it).\n";
    } else {
        os << "Outcome. No witness was found within the configured bounds (k <= "
           << report.k_max << "). Detail: " << report.detail << "\n";
    }
    return os.str();
}

} // namespace pcong
