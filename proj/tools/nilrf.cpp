#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nilrf/certify.hpp"
#include "nilrf/constructions.hpp"
#include "nilrf/divisibility.hpp"
#include "nilrf/groupfile.hpp"
#include "nilrf/report.hpp"

namespace {

using namespace nilrf;

std::string file_digest(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return "fnv1a:unavailable";
    std::ostringstream buf;
    buf << in.rdbuf();
    return "fnv1a:" + fnv1a_hex(buf.str());
}

double ms_since(const std::chrono::steady_clock::time_point& start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

ZVec parse_vector(const std::string& text, std::size_t expect)
{
    ZVec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // trim blanks
        std::size_t b = item.find_first_not_of(" \t");
        std::size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw parse_error("vector: empty component in '" + text + "'");
        try {
            v.emplace_back(item.substr(b, e - b + 1));
        } catch (const std::invalid_argument&) {
            throw parse_error("vector: bad integer '" + item + "'");
        }
    }
    if (v.size() != expect)
        throw parse_error("vector: expected " + std::to_string(expect) + " components, got " +
                          std::to_string(v.size()));
    return v;
}

std::size_t element_budget(std::size_t flag_value, bool flag_set)
{
    if (flag_set)
        return flag_value;
    if (const char* env = std::getenv("NILRF_BUDGET")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw parse_error("NILRF_BUDGET: not a number");
        }
    }
    return 1'000'000;
}

GroupPresentation load_validated(const std::string& path, bool print_warnings = true)
{
    GroupPresentation pres = read_group_file(path);
    auto rep = pres.validate();
    for (const auto& w : rep.warnings)
        if (print_warnings)
            std::cerr << "warning: " << w << "\n";
    if (!rep.ok) {
        std::string msg = "validation failed:";
        for (const auto& e : rep.errors)
            msg += "\n  - " + e;
        throw validation_error(msg);
    }
    return pres;
}

void emit(const nlohmann::json& j, const std::string& out_path)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot write: " + out_path);
    out << j.dump(2) << "\n";
}

int cmd_analyze(const std::string& path, const std::string& out_path, unsigned long seed,
                unsigned height)
{
    auto start = std::chrono::steady_clock::now();
    GroupPresentation pres = load_validated(path);
    CertifyOptions opts;
    opts.seed = seed;
    opts.height = height;
    RFVerdict verdict = analyze(pres, opts);
    double elapsed = ms_since(start);

    std::cout << "group: " << (pres.name().empty() ? path : pres.name()) << "  (m=" << pres.m()
              << ", n=" << pres.n() << ")\n";
    std::cout << "lower exponent base delta = " << verdict.delta << "  (certificate: v = "
              << to_string(verdict.lower_certificate.v) << ", "
              << verdict.lower_certificate.refs.size() << " minor terms"
              << (verdict.lower_certificate.lambda_integral ? ", integral" : "") << ")\n";
    std::cout << "upper exponent base d = " << verdict.d_upper << "  (method: ";
    switch (verdict.upper_report.method) {
    case UpperMethod::rank_n1:
        std::cout << "rank of the single matrix";
        break;
    case UpperMethod::binary_gcd_n2:
        std::cout << "binary minor gcd";
        break;
    case UpperMethod::heuristic_interval:
        std::cout << "refutation cap, floor " << verdict.upper_report.heuristic_floor;
        break;
    }
    std::cout << (verdict.upper_report.certified ? ", exact" : ", upper cap only") << ")\n";
    if (verdict.upper_report.hyperplane_v)
        std::cout << "hyperplane: " << to_string(*verdict.upper_report.hyperplane_v) << "\n";
    if (verdict.upper_report.good_prime_sample) {
        const auto& s = *verdict.upper_report.good_prime_sample;
        std::cout << "good prime sample: p = " << s.p.get_str() << ", basis";
        for (const auto& a : s.basis)
            std::cout << " " << to_string(a);
        std::cout << "\n";
    }
    if (!verdict.upper_report.good_primes_window.empty()) {
        std::cout << "good primes in the scan window:";
        for (const auto& q : verdict.upper_report.good_primes_window)
            std::cout << " " << q.get_str();
        std::cout << "\n";
    }
    std::cout << "exponent interval: [" << verdict.exponent_interval.first << ", "
              << verdict.exponent_interval.second << "]"
              << (verdict.tight ? "  (tight)" : "") << "\n";
    if (verdict.tight)
        std::cout << "residual finiteness growth: log^" << verdict.exponent_interval.first
                  << "\n";
    else
        std::cout << "residual finiteness growth between log^"
                  << verdict.exponent_interval.first << " and log^"
                  << verdict.exponent_interval.second
                  << " (lower end certified at height <= " << verdict.candidate_height << ")\n";

    if (!out_path.empty())
        emit(analysis_report(pres, verdict, path, file_digest(path), seed, elapsed), out_path);
    return 0;
}

int cmd_divisibility(const std::string& path, const std::string& vtext,
                     const std::string& oracle_bound, const std::string& primes_text,
                     const std::string& out_path, unsigned jobs)
{
    auto start = std::chrono::steady_clock::now();
    GroupPresentation pres = load_validated(path);
    ZVec v = parse_vector(vtext, pres.n());
    if (is_zero(v))
        throw parse_error("v = 0 names the identity, which no finite quotient separates");

    DivisibilityOptions opts;
    opts.jobs = jobs;
    DivisibilityResult result = divisibility_central(pres, v, opts);

    std::cout << "D(0, v) = " << result.value.get_str() << "\n";
    std::cout << "witness: p = " << result.witness.p.get_str() << ", k = " << result.witness.k
              << ", a = " << to_string(result.witness.a) << "\n";
    std::cout << "lattice B (columns): " << result.witness.lattice_B.basis().to_string() << "\n";
    std::cout << "lattice D (columns): " << result.witness.lattice_D.basis().to_string() << "\n";
    std::cout << "index = [Z^m : B] * [Z^n : D] = " << result.witness.lattice_B.index().get_str()
              << " * " << result.witness.lattice_D.index().get_str() << " = "
              << result.witness.index.get_str() << "\n";

    DivisibilityReportExtras extras;
    if (!oracle_bound.empty()) {
        mpz_class bound(oracle_bound);
        extras.oracle_bound = bound;
        auto oracle = divisibility_oracle(pres, v, bound);
        if (oracle) {
            extras.oracle_value = oracle->value;
            std::cout << "oracle (bound " << bound.get_str() << "): " << oracle->value.get_str()
                      << (oracle->value == result.value ? "  agrees" : "  MISMATCH") << "\n";
        } else {
            std::cout << "oracle (bound " << bound.get_str() << "): no admissible lattice\n";
        }
    }
    if (!primes_text.empty()) {
        std::stringstream ss(primes_text);
        std::string item;
        while (std::getline(ss, item, ','))
            extras.primes.emplace_back(item);
        extras.prime_bound_requested = true;
        auto bound = divisibility_upper_primes(pres, v, extras.primes);
        extras.prime_bound_value = bound;
        if (bound)
            std::cout << "prime-restricted bound: " << bound->get_str() << "\n";
        else
            std::cout << "prime-restricted bound: no admissible projection\n";
    }

    if (!out_path.empty())
        emit(divisibility_report(pres, v, result, extras, path, file_digest(path),
                                 ms_since(start)),
             out_path);
    return 0;
}

int cmd_construct(const std::string& family, unsigned count, long disc,
                  const std::string& out_path)
{
    GroupPresentation pres = [&]() {
        if (family == "heisenberg")
            return heisenberg();
        if (family == "gaussian")
            return heisenberg_gaussian();
        if (family == "sum")
            return heisenberg_sum(count);
        if (family == "galois")
            return galois_twist(QuadraticField{mpz_class(disc)});
        throw parse_error("unknown family '" + family +
                          "' (expected heisenberg|gaussian|sum|galois)");
    }();
    emit(group_to_json(pres), out_path);
    return 0;
}

int cmd_profile(const std::string& path, unsigned r_max, std::size_t budget)
{
    GroupPresentation pres = load_validated(path);
    auto profile = rf_profile(pres, r_max, budget);
    std::cout << std::setw(6) << "radius" << " | " << std::setw(9) << "ball size" << " | "
              << std::setw(16) << "max divisibility" << " | argmax\n";
    for (const auto& pt : profile) {
        std::cout << std::setw(6) << pt.radius << " | " << std::setw(9) << pt.ball_size << " | "
                  << std::setw(16) << pt.max_divisibility.get_str() << " | "
                  << pt.argmax.to_string()
                  << (pt.argmax_central ? "  [central, exact]" : "  [abelianization bound]")
                  << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open report: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
    VerifyOutcome outcome = verify_report(j);
    for (const auto& c : outcome.passed)
        std::cout << "ok   " << c << "\n";
    for (const auto& c : outcome.failed)
        std::cout << "FAIL " << c << "\n";
    std::cout << (outcome.ok ? "report verified" : "report REJECTED") << "\n";
    return outcome.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"certified residual-finiteness growth bounds for 2-step nilpotent groups"};
    app.require_subcommand(1);

    std::string path, out_path, vtext, oracle_bound, primes_text, family;
    unsigned long seed = 0;
    unsigned height = 5, jobs = 1, r_max = 3, count = 2;
    long disc = -1;
    std::size_t budget = 1'000'000;

    auto* analyze_cmd = app.add_subcommand("analyze", "compute the certified exponent interval");
    analyze_cmd->add_option("group", path, "group definition file")->required();
    analyze_cmd->add_option("--out", out_path, "write a machine-readable report");
    analyze_cmd->add_option("--seed", seed, "seed for sampling heuristics (n >= 3)");
    analyze_cmd->add_option("--height", height, "candidate-vector height bound");

    auto* div_cmd = app.add_subcommand("divisibility", "divisibility of a central element");
    div_cmd->add_option("group", path, "group definition file")->required();
    div_cmd->add_option("--v", vtext, "central coordinates, comma separated")->required();
    div_cmd->add_option("--oracle-bound", oracle_bound, "cross-check by lattice enumeration");
    div_cmd->add_option("--primes", primes_text, "prime-restricted upper bound");
    div_cmd->add_option("--out", out_path, "write a machine-readable report");
    div_cmd->add_option("--jobs", jobs, "worker threads for the prime-power scan");

    auto* con_cmd = app.add_subcommand("construct", "emit a named group family");
    con_cmd->add_option("family", family, "heisenberg|gaussian|sum|galois")->required();
    con_cmd->add_option("--count", count, "number of factors (sum)");
    con_cmd->add_option("--disc", disc, "squarefree field discriminant (galois)");
    con_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* prof_cmd = app.add_subcommand("profile", "per-radius divisibility maxima");
    prof_cmd->add_option("group", path, "group definition file")->required();
    prof_cmd->add_option("--r-max", r_max, "largest radius")->required();
    auto* budget_opt = prof_cmd->add_option("--budget", budget, "ball element budget");

    auto* ver_cmd = app.add_subcommand("verify", "re-verify an emitted report");
    ver_cmd->add_option("report", path, "report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(analyze_cmd))
            return cmd_analyze(path, out_path, seed, height);
        if (app.got_subcommand(div_cmd))
            return cmd_divisibility(path, vtext, oracle_bound, primes_text, out_path, jobs);
        if (app.got_subcommand(con_cmd))
            return cmd_construct(family, count, disc, out_path);
        if (app.got_subcommand(prof_cmd))
            return cmd_profile(path, r_max,
                               element_budget(budget, budget_opt->count() > 0));
        if (app.got_subcommand(ver_cmd))
            return cmd_verify(path);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed document: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
