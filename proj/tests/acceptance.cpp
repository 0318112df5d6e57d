// Acceptance suite: one line per criterion, exact checks at pinned budgets.
// Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "nilrf/certify.hpp"
#include "nilrf/constructions.hpp"
#include "nilrf/divisibility.hpp"
#include "nilrf/pencils.hpp"
#include "test_util.hpp"

using namespace nilrf;
using namespace nilrf::testutil;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
};

#define REQUIRE_EQ(out, lhs, rhs, what)                                                  \
    do {                                                                                 \
        if (!((lhs) == (rhs))) {                                                         \
            (out).ok = false;                                                            \
            (out).detail << "    " << what << "\n";                                      \
        }                                                                                \
    } while (0)

#define REQUIRE_TRUE(out, cond, what) REQUIRE_EQ(out, static_cast<bool>(cond), true, what)

Outcome criterion_worked_verdicts()
{
    Outcome out;
    struct Case {
        GroupPresentation pres;
        unsigned expected;
    };
    std::vector<Case> cases;
    cases.push_back({heis(), 3});
    cases.push_back({heis_gaussian(), 3});
    cases.push_back({quotient_rank4(), 5});
    for (auto& c : cases) {
        auto t0 = std::chrono::steady_clock::now();
        auto v = analyze(c.pres);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        REQUIRE_EQ(out, v.exponent_interval.first, c.expected,
                   c.pres.name() + ": interval lower end");
        REQUIRE_EQ(out, v.exponent_interval.second, c.expected,
                   c.pres.name() + ": interval upper end");
        REQUIRE_TRUE(out, v.tight, c.pres.name() + ": tight flag");
        REQUIRE_TRUE(out, verify_membership(c.pres.pencil(), v.lower_certificate),
                     c.pres.name() + ": certificate re-expansion");
        REQUIRE_TRUE(out, s < 5.0, c.pres.name() + ": analyze exceeded 5 s");
    }
    return out;
}

Outcome criterion_solved_system()
{
    Outcome out;
    auto pencil = heis_gaussian().pencil();
    auto gens = minor_ideal_generators(pencil, 2);
    REQUIRE_EQ(out, gens.size(), std::size_t{4}, "generator count");
    auto x1sq = HomogeneousForm::monomial(2, {2, 0}, 1);
    auto x1x2 = HomogeneousForm::monomial(2, {1, 1}, 1);
    auto x2sq = HomogeneousForm::monomial(2, {0, 2}, 1);
    REQUIRE_TRUE(out, gens[0] == x1sq, "generator 1 is x1^2");
    REQUIRE_TRUE(out, gens[1] == x1x2, "generator 2 is x1*x2");
    REQUIRE_TRUE(out, gens[2] == x2sq, "generator 3 is x2^2");
    REQUIRE_TRUE(out, gens[3] == x1sq + x2sq, "generator 4 is x1^2 + x2^2");

    auto cert = membership({mpz_class(1), mpz_class(0)}, 2, pencil);
    REQUIRE_TRUE(out, cert.has_value(), "membership((1,0), 2) feasible");
    if (cert) {
        REQUIRE_TRUE(out, cert->lambda_canonical.has_value(), "dense lambda present");
        if (cert->lambda_canonical)
            REQUIRE_TRUE(out, (*cert->lambda_canonical == QVec{1, 0, 0, 0}),
                         "lambda equals (1, 0, 0, 0)");
        REQUIRE_TRUE(out, verify_membership(pencil, *cert), "re-expansion");
    }
    return out;
}

Outcome criterion_lower_estimate()
{
    Outcome out;
    for (auto& pres : {heis(), heis_gaussian()}) {
        auto verdict = analyze(pres);
        REQUIRE_EQ(out, verdict.delta, 2u, pres.name() + ": delta is 2");
        const ZVec& v = verdict.lower_certificate.v;
        for (unsigned kappa = 2; kappa <= 5; ++kappa) {
            mpz_class scale = lcm_upto(kappa);
            ZVec sv(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                sv[i] = scale * v[i];
            mpz_class value = divisibility_central(pres, sv).value;
            mpz_class rhs = pow(mpz_class(kappa), verdict.delta + 1);
            REQUIRE_TRUE(out, value > rhs,
                         pres.name() + ": D(0, lcm(1.." + std::to_string(kappa) + ") v) = " +
                             value.get_str() + " <= " + rhs.get_str());
        }
    }
    return out;
}

Outcome criterion_oracle_equivalence()
{
    Outcome out;
    mpz_class bound = 10000;
    auto p = heis();
    for (long h = -6; h <= 6; ++h) {
        if (h == 0)
            continue;
        auto central = divisibility_central(p, {mpz_class(h)});
        auto oracle = divisibility_oracle(p, {mpz_class(h)}, bound);
        REQUIRE_TRUE(out, oracle.has_value(), "oracle found a lattice for v=" + std::to_string(h));
        if (oracle && oracle->value <= bound)
            REQUIRE_EQ(out, central.value, oracle->value,
                       "v=" + std::to_string(h) + ": central " + central.value.get_str() +
                           " vs oracle " + oracle->value.get_str());
    }
    auto g = heis_gaussian();
    for (auto v : std::vector<ZVec>{{mpz_class(1), mpz_class(0)},
                                    {mpz_class(0), mpz_class(1)},
                                    {mpz_class(1), mpz_class(1)},
                                    {mpz_class(2), mpz_class(3)}}) {
        auto central = divisibility_central(g, v);
        auto oracle = divisibility_oracle(g, v, bound);
        REQUIRE_TRUE(out, oracle.has_value(), "gaussian oracle found a lattice");
        if (oracle && oracle->value <= bound)
            REQUIRE_EQ(out, central.value, oracle->value, "gaussian central vs oracle");
    }
    return out;
}

Outcome criterion_pencil_corpus()
{
    Outcome out;
    std::mt19937_64 rng(20250810);
    int with_certificate = 0;
    for (int iter = 0; iter < 100; ++iter) {
        BlockPencil spec = random_block_pencil(rng, 4);
        auto pen = realize(spec);
        unsigned expect = d_y_formula(spec);
        unsigned got = d_y_exact(pen);
        REQUIRE_EQ(out, got, expect,
                   "instance " + std::to_string(iter) + ": d_y " + std::to_string(got) +
                       " != formula " + std::to_string(expect));
        if (expect == 0)
            continue; // empty power of y; nothing to certify
        auto cert = membership({mpz_class(0), mpz_class(1)}, expect, pen);
        REQUIRE_TRUE(out, cert.has_value(),
                     "instance " + std::to_string(iter) + ": no y^dy certificate");
        if (cert) {
            REQUIRE_TRUE(out, verify_membership(pen, *cert),
                         "instance " + std::to_string(iter) + ": certificate re-expansion");
            ++with_certificate;
        }
    }
    REQUIRE_TRUE(out, with_certificate > 50, "corpus should exercise nonzero d_y broadly");
    return out;
}

bool spans_match(const std::vector<HomogeneousForm>& a, const std::vector<HomogeneousForm>& b,
                 unsigned degree)
{
    auto x = HomogeneousForm::monomial(2, {1, 0}, 1);
    auto y = HomogeneousForm::monomial(2, {0, 1}, 1);
    for (unsigned extra = 0; extra <= 1; ++extra) {
        FormSpan sa(2, degree + extra), sb(2, degree + extra);
        for (const auto& f : a) {
            if (extra == 0)
                sa.add(f);
            else {
                sa.add(f * x);
                sa.add(f * y);
            }
        }
        for (const auto& f : b) {
            if (extra == 0)
                sb.add(f);
            else {
                sb.add(f * x);
                sb.add(f * y);
            }
        }
        if (sa.dim() != sb.dim())
            return false;
        if (extra == 0) {
            for (const auto& f : a)
                if (!sb.contains(f))
                    return false;
            for (const auto& f : b)
                if (!sa.contains(f))
                    return false;
        }
    }
    return true;
}

Outcome criterion_block_table()
{
    Outcome out;
    std::vector<mpq_class> alphas{0, 1, -2};
    for (unsigned k = 1; k <= 4; ++k) {
        std::vector<BlockSpec> specs;
        specs.push_back(BlockSpec::infinite(k));
        for (const auto& a : alphas)
            specs.push_back(BlockSpec::finite(a, k));
        for (const auto& b : specs) {
            auto ref = block_reference_matrix(b);
            if (k >= 2)
                REQUIRE_TRUE(out,
                             spans_match(minor_ideal_generators(ref, k - 1),
                                         block_minor_ideals(b, k - 1), k - 1),
                             "eigen block (k=" + std::to_string(k) + "): degree k-1 slice");
            REQUIRE_TRUE(out,
                         spans_match(minor_ideal_generators(ref, k), block_minor_ideals(b, k), k),
                         "eigen block (k=" + std::to_string(k) + "): degree k slice");
        }
        auto s = BlockSpec::singular(k);
        auto ref = block_reference_matrix(s);
        REQUIRE_TRUE(out,
                     spans_match(minor_ideal_generators(ref, 2 * k), block_minor_ideals(s, 2 * k),
                                 2 * k),
                     "singular block (k=" + std::to_string(k) + "): degree 2k slice");
        REQUIRE_TRUE(out, minor_ideal_generators(ref, 2 * k + 1).empty(),
                     "singular block (k=" + std::to_string(k) + "): top minor vanishes");
        REQUIRE_TRUE(out, block_minor_ideals(s, 2 * k + 1).empty(),
                     "singular block (k=" + std::to_string(k) + "): zero ideal listed");
    }
    return out;
}

Outcome criterion_resultant_spans()
{
    Outcome out;
    std::vector<long> alphas{0, 1, -1, 2};
    for (long a1 : alphas)
        for (long a2 : alphas) {
            if (a1 == a2)
                continue;
            for (unsigned r1 = 1; r1 <= 3; ++r1)
                for (unsigned r2 = 1; r2 <= 3; ++r2) {
                    unsigned deg = r1 + r2 - 1;
                    FormSpan span(2, deg);
                    auto f1 = HomogeneousForm::linear(ZVec{1, -a1}).pow(r1);
                    auto f2 = HomogeneousForm::linear(ZVec{1, -a2}).pow(r2);
                    for (unsigned i = 0; i < r2; ++i)
                        span.add(f1 * HomogeneousForm::monomial(2, {i, r2 - 1 - i}, 1));
                    for (unsigned i = 0; i < r1; ++i)
                        span.add(f2 * HomogeneousForm::monomial(2, {i, r1 - 1 - i}, 1));
                    REQUIRE_EQ(out, span.dim(), std::size_t{deg + 1},
                               "alpha=" + std::to_string(a1) + ", alpha'=" + std::to_string(a2) +
                                   ", r1=" + std::to_string(r1) + ", r2=" + std::to_string(r2));
                }
        }
    return out;
}

Outcome criterion_galois()
{
    Outcome out;
    for (long d : {-1, 2}) {
        QuadraticField f{mpz_class(d)};
        auto g = galois_twist(f);
        auto rep = g.validate();
        REQUIRE_TRUE(out, rep.ok, "twist D=" + std::to_string(d) + " validates");
        for (std::size_t i = 0; i < g.n(); ++i)
            REQUIRE_TRUE(out, g.matrix(i).is_skew_symmetric(),
                         "twist D=" + std::to_string(d) + ": matrix skew");
        auto verdict = analyze(g);
        REQUIRE_TRUE(out,
                     (verdict.exponent_interval == std::pair<unsigned, unsigned>{3, 3} &&
                      verdict.tight),
                     "twist D=" + std::to_string(d) + ": interval [3,3]");
        REQUIRE_TRUE(out, psi_nonsingular(g) == 5u,
                     "twist D=" + std::to_string(d) + ": psi = 5");
        REQUIRE_TRUE(out, !nonsingular_over_Q_search(g, 20).counterexample.has_value(),
                     "twist D=" + std::to_string(d) + ": no rank drop up to height 20");
        std::vector<std::size_t> all{0, 1, 2, 3};
        auto det = g.pencil().matrix().minor_det(all, all);
        REQUIRE_TRUE(out, !rational_linear_factor(det).has_value(),
                     "twist D=" + std::to_string(d) + ": det has no rational linear factor");
        REQUIRE_TRUE(out, !binary_form_has_rational_zero(det),
                     "twist D=" + std::to_string(d) + ": det has no rational zero");
    }
    return out;
}

Outcome criterion_good_primes()
{
    Outcome out;
    auto pencil = heis_gaussian().pencil();
    mpz_class p = 3;
    for (int i = 0; i < 15; ++i) {
        bool good = good_prime_basis(pencil, p, 2).has_value();
        bool expected = (p % 4 == 1);
        REQUIRE_EQ(out, good, expected,
                   "p=" + p.get_str() + ": good=" + std::to_string(good) + " expected " +
                       std::to_string(expected));
        p = next_prime(p);
    }
    return out;
}

Outcome criterion_group_core()
{
    Outcome out;
    std::mt19937_64 rng(424243);
    for (auto& p : {heis(), heis_gaussian()}) {
        std::uniform_int_distribution<long> d(-8, 8);
        auto rand_elem = [&]() {
            GroupElement g;
            for (std::size_t i = 0; i < p.m(); ++i)
                g.w.emplace_back(d(rng));
            for (std::size_t i = 0; i < p.n(); ++i)
                g.v.emplace_back(d(rng));
            return g;
        };
        for (int iter = 0; iter < 1000; ++iter) {
            auto a = rand_elem(), b = rand_elem(), c = rand_elem();
            if (!(p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c)))) {
                REQUIRE_TRUE(out, false, p.name() + ": associativity");
                break;
            }
            if (!(p.multiply(a, p.identity()) == a) ||
                !(p.multiply(p.inverse(a), a) == p.identity())) {
                REQUIRE_TRUE(out, false, p.name() + ": identity/inverse");
                break;
            }
        }

        std::uniform_int_distribution<std::size_t> len(0, 8);
        std::uniform_int_distribution<std::size_t> gen(0, p.m() - 1);
        for (int iter = 0; iter < 500; ++iter) {
            FreeWord w;
            std::size_t l = len(rng);
            for (std::size_t i = 0; i < l; ++i)
                w.letters.push_back({gen(rng), (rng() & 1) ? 1 : -1});
            w.tail = ZVec(p.n(), mpz_class(0));
            GroupElement prod = p.identity();
            for (const auto& let : w.letters) {
                GroupElement e = p.identity();
                e.w[let.gen] = let.exp;
                prod = p.multiply(prod, e);
            }
            if (!(p.collect(w) == prod)) {
                REQUIRE_TRUE(out, false, p.name() + ": collect vs multiply");
                break;
            }
        }

        mpz_class cbound = p.metric_constant();
        for (unsigned r = 1; r <= 4; ++r) {
            for (const auto& g : p.ball(r)) {
                for (const auto& wi : g.w)
                    if (abs(wi) > r)
                        REQUIRE_TRUE(out, false, p.name() + ": |w| bound at radius " +
                                                     std::to_string(r));
                for (const auto& vi : g.v)
                    if (abs(vi) > cbound * r * r)
                        REQUIRE_TRUE(out, false, p.name() + ": |v| bound at radius " +
                                                     std::to_string(r));
            }
        }
    }
    return out;
}

Outcome criterion_congruence_invariance()
{
    Outcome out;
    std::mt19937_64 rng(171717);
    for (auto& pres : {heis(), heis_gaussian(), quotient_rank4()}) {
        auto pencil = pres.pencil();
        unsigned delta0 = delta_search(pencil).delta;
        unsigned upper0 = upper_bound_d(pencil).d_upper;
        for (int iter = 0; iter < 20; ++iter) {
            IntMatrix q = random_unimodular(rng, pencil.size());
            auto conj = pencil.basis_change(q);
            REQUIRE_EQ(out, delta_search(conj).delta, delta0,
                       pres.name() + ": delta under basis change " + std::to_string(iter));
            REQUIRE_EQ(out, upper_bound_d(conj).d_upper, upper0,
                       pres.name() + ": d_upper under basis change " + std::to_string(iter));
            IntMatrix pv = random_unimodular(rng, pencil.nvars());
            auto sub = pencil.variable_change(pv);
            REQUIRE_EQ(out, delta_search(sub).delta, delta0,
                       pres.name() + ": delta under variable change " + std::to_string(iter));
            REQUIRE_EQ(out, upper_bound_d(sub).d_upper, upper0,
                       pres.name() + ": d_upper under variable change " + std::to_string(iter));
        }
    }
    return out;
}

struct Criterion {
    int id;
    std::string label;
    std::function<Outcome()> run;
    double budget_s; // 0 = untimed
};

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "worked verdicts: [3,3], [3,3], [5,5] tight", criterion_worked_verdicts, 15.0},
        {2, "solved linear system: lambda = (1,0,0,0)", criterion_solved_system, 0},
        {3, "lower estimate: D(0, lcm(1..k) v) > k^3", criterion_lower_estimate, 30.0},
        {4, "oracle equivalence at bound 10^4", criterion_oracle_equivalence, 120.0},
        {5, "pencil corpus: d_y and y^dy certificates", criterion_pencil_corpus, 120.0},
        {6, "block minor ideal table (k <= 4)", criterion_block_table, 0},
        {7, "coprime-power span of the full slice", criterion_resultant_spans, 0},
        {8, "Galois twists over Q(i), Q(sqrt 2)", criterion_galois, 30.0},
        {9, "good primes split by residue mod 4", criterion_good_primes, 0},
        {10, "group core: axioms, collection, metric", criterion_group_core, 60.0},
        {11, "invariance under unimodular changes", criterion_congruence_invariance, 0},
    };

    int fails = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail << "    exception: " << e.what() << "\n";
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool timed_out = c.budget_s > 0 && s > c.budget_s;
        bool ok = out.ok && !timed_out;
        std::cout << (ok ? "PASS" : "FAIL") << "  [" << std::setw(2) << c.id << "] " << c.label
                  << "  (" << std::fixed << std::setprecision(2) << s << " s";
        if (c.budget_s > 0)
            std::cout << " / " << std::setprecision(0) << c.budget_s << " s budget";
        std::cout << ")\n";
        if (!out.ok)
            std::cout << out.detail.str();
        if (timed_out)
            std::cout << "    exceeded the time budget\n";
        if (!ok)
            ++fails;
    }
    if (fails == 0)
        std::cout << "acceptance: all " << criteria.size() << " criteria passed\n";
    else
        std::cout << "acceptance: " << fails << " criterion(s) failed\n";
    return fails;
}
