#include "nilrf/report.hpp"

namespace nilrf {

namespace {

nlohmann::json qvec_to_json(const QVec& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v)
        a.push_back(x.get_str());
    return a;
}

mpq_class rational_from_json(const nlohmann::json& j, const std::string& where)
{
    if (j.is_number_integer())
        return mpq_class(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        try {
            mpq_class q(j.get<std::string>());
            q.canonicalize();
            return q;
        } catch (const std::exception&) {
        }
    }
    throw parse_error(where + ": expected a rational as string");
}

std::vector<std::size_t> indices_from_json(const nlohmann::json& j, const std::string& where)
{
    if (!j.is_array())
        throw parse_error(where + ": expected an index array");
    std::vector<std::size_t> out;
    for (const auto& x : j) {
        if (!x.is_number_unsigned() && !x.is_number_integer())
            throw parse_error(where + ": expected integer indices");
        long v = x.get<long>();
        if (v < 0)
            throw parse_error(where + ": negative index");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

const char* method_name(UpperMethod m)
{
    switch (m) {
    case UpperMethod::rank_n1:
        return "rank_n1";
    case UpperMethod::binary_gcd_n2:
        return "binary_gcd_n2";
    case UpperMethod::heuristic_interval:
        return "heuristic_interval";
    }
    return "unknown";
}

nlohmann::json input_block(const GroupPresentation& pres, const std::string& path,
                           const std::string& digest)
{
    nlohmann::json input = group_to_json(pres);
    input["path"] = path;
    input["digest"] = digest;
    return input;
}

} // namespace

nlohmann::json certificate_to_json(const MembershipCertificate& cert)
{
    nlohmann::json j;
    j["v"] = zvec_to_json(cert.v);
    j["d"] = cert.d;
    j["power"] = cert.power;
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t i = 0; i < cert.refs.size(); ++i) {
        nlohmann::json t;
        t["rows"] = cert.refs[i].rows;
        t["cols"] = cert.refs[i].cols;
        t["coeff"] = cert.coeffs[i].get_str();
        if (!cert.multipliers.empty())
            t["multiplier"] = cert.multipliers[i];
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    if (cert.lambda_canonical)
        j["lambda_canonical"] = qvec_to_json(*cert.lambda_canonical);
    j["lambda_integral"] = cert.lambda_integral;
    return j;
}

MembershipCertificate certificate_from_json(const nlohmann::json& j)
{
    MembershipCertificate cert;
    cert.v = zvec_from_json(j.at("v"), "certificate.v");
    cert.d = j.at("d").get<unsigned>();
    cert.power = j.at("power").get<unsigned>();
    for (std::size_t i = 0; i < j.at("terms").size(); ++i) {
        const auto& t = j["terms"][i];
        std::string where = "certificate.terms[" + std::to_string(i) + "]";
        MinorRef ref;
        ref.rows = indices_from_json(t.at("rows"), where + ".rows");
        ref.cols = indices_from_json(t.at("cols"), where + ".cols");
        cert.refs.push_back(std::move(ref));
        cert.coeffs.push_back(rational_from_json(t.at("coeff"), where + ".coeff"));
        if (t.contains("multiplier")) {
            Monomial mult;
            for (const auto& e : t["multiplier"])
                mult.push_back(e.get<unsigned>());
            cert.multipliers.push_back(std::move(mult));
        }
    }
    if (j.contains("lambda_canonical")) {
        QVec lambda;
        for (std::size_t i = 0; i < j["lambda_canonical"].size(); ++i)
            lambda.push_back(rational_from_json(j["lambda_canonical"][i],
                                                "certificate.lambda_canonical"));
        cert.lambda_canonical = std::move(lambda);
    }
    cert.lambda_integral = j.value("lambda_integral", false);
    return cert;
}

nlohmann::json analysis_report(const GroupPresentation& pres, const RFVerdict& verdict,
                               const std::string& input_path, const std::string& digest,
                               unsigned long seed, double timing_ms)
{
    nlohmann::json j;
    j["kind"] = "analysis";
    j["tool"] = {{"name", tool_name}, {"version", tool_version}};
    j["seed"] = seed;
    j["timing_ms"] = timing_ms;
    j["input"] = input_block(pres, input_path, digest);

    nlohmann::json v;
    v["delta"] = verdict.delta;
    v["d_upper"] = verdict.d_upper;
    v["exponent_interval"] = {verdict.exponent_interval.first, verdict.exponent_interval.second};
    v["tight"] = verdict.tight;
    v["upper_method"] = method_name(verdict.upper_report.method);
    v["upper_certified"] = verdict.upper_report.certified;
    v["candidate_height"] = verdict.candidate_height;
    if (verdict.upper_report.hyperplane_v)
        v["hyperplane_v"] = zvec_to_json(*verdict.upper_report.hyperplane_v);
    else
        v["hyperplane_v"] = nullptr;
    if (verdict.upper_report.method == UpperMethod::heuristic_interval)
        v["heuristic_floor"] = verdict.upper_report.heuristic_floor;
    if (verdict.upper_report.good_prime_sample) {
        const auto& s = *verdict.upper_report.good_prime_sample;
        nlohmann::json g;
        g["p"] = s.p.get_str();
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& a : s.basis)
            basis.push_back(zvec_to_json(a));
        g["basis"] = std::move(basis);
        g["ranks"] = s.ranks;
        v["good_prime"] = std::move(g);
    } else {
        v["good_prime"] = nullptr;
    }
    nlohmann::json window = nlohmann::json::array();
    for (const auto& p : verdict.upper_report.good_primes_window)
        window.push_back(p.get_str());
    v["good_primes_scanned"] = std::move(window);
    j["verdict"] = std::move(v);
    j["certificate"] = certificate_to_json(verdict.lower_certificate);

    // pretty generator list alongside the dense coefficients, when available
    if (verdict.lower_certificate.lambda_canonical) {
        auto gens = minor_ideal_generators(pres.pencil(), verdict.lower_certificate.d);
        nlohmann::json names = nlohmann::json::array();
        for (const auto& g : gens)
            names.push_back(g.to_string());
        j["certificate"]["generators"] = std::move(names);
    }
    return j;
}

nlohmann::json divisibility_report(const GroupPresentation& pres, const ZVec& v,
                                   const DivisibilityResult& result,
                                   const DivisibilityReportExtras& extras,
                                   const std::string& input_path, const std::string& digest,
                                   double timing_ms)
{
    nlohmann::json j;
    j["kind"] = "divisibility";
    j["tool"] = {{"name", tool_name}, {"version", tool_version}};
    j["timing_ms"] = timing_ms;
    j["input"] = input_block(pres, input_path, digest);
    j["query"] = {{"v", zvec_to_json(v)}};

    nlohmann::json r;
    r["value"] = result.value.get_str();
    nlohmann::json w;
    w["p"] = result.witness.p.get_str();
    w["k"] = result.witness.k;
    w["a"] = zvec_to_json(result.witness.a);
    w["index"] = result.witness.index.get_str();
    w["lattice_B"] = intmatrix_to_json(result.witness.lattice_B.basis());
    w["lattice_D"] = intmatrix_to_json(result.witness.lattice_D.basis());
    r["witness"] = std::move(w);
    j["result"] = std::move(r);

    if (extras.oracle_bound) {
        nlohmann::json o;
        o["bound"] = extras.oracle_bound->get_str();
        if (extras.oracle_value) {
            o["value"] = extras.oracle_value->get_str();
            o["agrees"] = (*extras.oracle_value == result.value);
        } else {
            o["value"] = nullptr;
        }
        j["oracle"] = std::move(o);
    }
    if (extras.prime_bound_requested) {
        nlohmann::json p;
        nlohmann::json primes = nlohmann::json::array();
        for (const auto& q : extras.primes)
            primes.push_back(q.get_str());
        p["primes"] = std::move(primes);
        if (extras.prime_bound_value)
            p["value"] = extras.prime_bound_value->get_str();
        else
            p["value"] = nullptr;
        j["prime_bound"] = std::move(p);
    }
    return j;
}

namespace {

void check(VerifyOutcome& out, bool ok, const std::string& label)
{
    if (ok) {
        out.passed.push_back(label);
    } else {
        out.failed.push_back(label);
        out.ok = false;
    }
}

VerifyOutcome verify_analysis(const nlohmann::json& report)
{
    VerifyOutcome out;
    GroupPresentation pres = group_from_json(report.at("input"));
    SymbolicPencil pencil = pres.pencil();
    MembershipCertificate cert = certificate_from_json(report.at("certificate"));

    check(out, verify_membership(pencil, cert), "certificate re-expansion over minors");

    const auto& v = report.at("verdict");
    unsigned delta = v.at("delta").get<unsigned>();
    unsigned upper = v.at("d_upper").get<unsigned>();
    auto interval = v.at("exponent_interval");
    check(out, cert.d == delta && cert.power >= delta, "certificate matches the claimed delta");
    check(out,
          interval.size() == 2 && interval[0].get<unsigned>() == delta + 1 &&
              interval[1].get<unsigned>() == upper + 1,
          "exponent interval equals [delta+1, d_upper+1]");
    check(out, delta <= upper, "delta does not exceed the upper bound");
    check(out, v.at("tight").get<bool>() == (delta == upper), "tight flag consistency");

    if (report["certificate"].contains("lambda_canonical")) {
        // independent second route: re-expand against the canonical
        // deduplicated generator list
        auto gens = minor_ideal_generators(pencil, cert.d);
        const auto& lj = report["certificate"]["lambda_canonical"];
        bool ok = gens.size() == lj.size();
        if (ok) {
            HomogeneousForm acc(pencil.nvars(), cert.d);
            for (std::size_t i = 0; i < gens.size(); ++i)
                acc = acc + gens[i].scaled(rational_from_json(lj[i], "lambda_canonical"));
            ok = (acc == HomogeneousForm::linear(cert.v).pow(cert.d));
        }
        check(out, ok, "canonical lambda re-expansion over generators");
    }

    if (!v.at("good_prime").is_null()) {
        const auto& g = v["good_prime"];
        mpz_class p = integer_from_json(g.at("p"), "good_prime.p");
        bool ok = is_prime(p);
        std::vector<ZVec> basis;
        for (const auto& bj : g.at("basis"))
            basis.push_back(zvec_from_json(bj, "good_prime.basis"));
        ok = ok && basis.size() == pres.n();
        if (ok) {
            IntMatrix bm(pres.n(), pres.n());
            for (std::size_t i = 0; i < basis.size(); ++i) {
                std::size_t rank = rank_mod_p(pencil.evaluate(basis[i]), p.get_ui());
                ok = ok && rank <= upper;
                for (std::size_t c = 0; c < pres.n(); ++c)
                    bm.at(i, c) = basis[i][c];
            }
            ok = ok && rank_mod_p(bm, p.get_ui()) == pres.n();
        }
        check(out, ok, "good-prime basis ranks and independence");
    }
    return out;
}

VerifyOutcome verify_divisibility(const nlohmann::json& report)
{
    VerifyOutcome out;
    GroupPresentation pres = group_from_json(report.at("input"));
    ZVec v = zvec_from_json(report.at("query").at("v"), "query.v");
    const auto& r = report.at("result");
    mpz_class value = integer_from_json(r.at("value"), "result.value");
    const auto& w = r.at("witness");
    mpz_class p = integer_from_json(w.at("p"), "witness.p");
    unsigned k = w.at("k").get<unsigned>();
    ZVec a = zvec_from_json(w.at("a"), "witness.a");
    mpz_class index = integer_from_json(w.at("index"), "witness.index");
    mpz_class pk = pow(p, k);

    check(out, is_prime(p), "witness prime is prime");
    mpz_class dot = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        dot += a[i] * v[i];
    check(out, dot % pk != 0, "projection separates v modulo p^k");
    check(out, gcd(gcd(a), p) == 1, "projection is primitive and coprime to p");

    IntMatrix ma = pres.pencil().evaluate(a);
    check(out, image_size_mod(ma, p, k) * pk == index, "index equals image size times p^k");
    check(out, index == value, "value equals the witness index");

    Sublattice b = kernel_mod(ma, p, k);
    IntMatrix arow(1, a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        arow.at(0, i) = a[i];
    Sublattice d = kernel_mod(arow, pk);
    check(out, intmatrix_to_json(b.basis()) == w.at("lattice_B"), "lattice B recomputation");
    check(out, intmatrix_to_json(d.basis()) == w.at("lattice_D"), "lattice D recomputation");
    check(out, b.index() * d.index() == index, "index factors through the lattice pair");
    check(out, !d.contains(v), "lattice D avoids v");

    if (report.contains("oracle") && !report["oracle"].at("value").is_null()) {
        mpz_class ov = integer_from_json(report["oracle"]["value"], "oracle.value");
        check(out, report["oracle"].at("agrees").get<bool>() == (ov == value),
              "oracle agreement flag consistency");
    }
    return out;
}

} // namespace

VerifyOutcome verify_report(const nlohmann::json& report)
{
    if (!report.is_object() || !report.contains("kind"))
        throw parse_error("report: missing 'kind'");
    std::string kind = report["kind"].get<std::string>();
    if (kind == "analysis")
        return verify_analysis(report);
    if (kind == "divisibility")
        return verify_divisibility(report);
    throw parse_error("report: unknown kind '" + kind + "'");
}

} // namespace nilrf
