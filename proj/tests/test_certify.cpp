#include <doctest.h>

#include <random>

#include "nilrf/certify.hpp"
#include "nilrf/pencils.hpp"
#include "test_util.hpp"

using namespace nilrf;
using namespace nilrf::testutil;

namespace {

GroupPresentation heis_sum(unsigned count)
{
    std::vector<IntMatrix> mats;
    for (unsigned i = 0; i < count; ++i) {
        IntMatrix a(2 * count, 2 * count);
        a.at(2 * i, 2 * i + 1) = 1;
        a.at(2 * i + 1, 2 * i) = -1;
        mats.push_back(std::move(a));
    }
    return GroupPresentation(std::move(mats), "heisenberg-sum");
}

} // namespace

TEST_CASE("membership reproduces the solved linear system")
{
    auto pencil = heis_gaussian().pencil();
    auto cert = membership({mpz_class(1), mpz_class(0)}, 2, pencil);
    REQUIRE(cert.has_value());
    REQUIRE(cert->lambda_canonical.has_value());
    CHECK(*cert->lambda_canonical == QVec{1, 0, 0, 0});
    CHECK(cert->lambda_integral);
    CHECK(verify_membership(pencil, *cert));
}

TEST_CASE("membership failures and trivial cases")
{
    auto pencil = heis_gaussian().pencil();
    SUBCASE("x1^4 is not in the top minor ideal")
    {
        CHECK(!membership({mpz_class(1), mpz_class(0)}, 4, pencil).has_value());
    }
    SUBCASE("the norm-form vector is also rejected at degree 4")
    {
        CHECK(!membership({mpz_class(1), mpz_class(1)}, 4, pencil).has_value());
    }
    SUBCASE("single-matrix pencil")
    {
        SymbolicPencil j({IntMatrix{{0, 1}, {-1, 0}}});
        auto cert = membership({mpz_class(1)}, 2, j);
        REQUIRE(cert.has_value());
        CHECK(*cert->lambda_canonical == QVec{1});
        CHECK(verify_membership(j, *cert));
    }
    SUBCASE("input validation")
    {
        CHECK_THROWS_AS(membership({mpz_class(0), mpz_class(0)}, 2, pencil),
                        std::invalid_argument);
        CHECK_THROWS_AS(membership({mpz_class(1), mpz_class(0)}, 5, pencil),
                        std::invalid_argument);
    }
}

TEST_CASE("lazy component route agrees with the dense route")
{
    std::mt19937_64 rng(90210);
    int done = 0;
    for (int iter = 0; iter < 200 && done < 20; ++iter) {
        BlockPencil spec = random_block_pencil(rng, 3);
        auto pen = realize(spec);
        if (pen.size() > 9)
            continue; // keep the forced-dense route affordable
        unsigned dy = d_y_exact(pen);
        if (dy == 0)
            continue;
        ++done;
        ZVec y{mpz_class(0), mpz_class(1)};

        CertifyOptions dense_opts;
        dense_opts.dense_budget = 1'000'000'000; // force dense
        CertifyOptions lazy_opts;
        lazy_opts.dense_budget = 0; // force lazy

        auto a = membership(y, dy, pen, dense_opts);
        auto b = membership(y, dy, pen, lazy_opts);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(verify_membership(pen, *a));
        CHECK(verify_membership(pen, *b));
    }
}

TEST_CASE("y^dy lies in the dy-minor ideal of realized pencils")
{
    std::mt19937_64 rng(60601);
    for (int iter = 0; iter < 15; ++iter) {
        BlockPencil spec = random_block_pencil(rng);
        auto pen = realize(spec);
        unsigned dy = d_y_formula(spec);
        if (dy == 0)
            continue;
        auto cert = membership({mpz_class(0), mpz_class(1)}, dy, pen);
        REQUIRE(cert.has_value());
        CHECK(verify_membership(pen, *cert));
    }
}

TEST_CASE("delta search on the flagship groups")
{
    SUBCASE("one-matrix Heisenberg")
    {
        auto r = delta_search(heis().pencil());
        CHECK(r.delta == 2);
        REQUIRE(r.certificate.has_value());
        CHECK(r.certificate->v == ZVec{1});
    }
    SUBCASE("Gaussian Heisenberg")
    {
        auto r = delta_search(heis_gaussian().pencil());
        CHECK(r.delta == 2);
        REQUIRE(r.certificate.has_value());
        CHECK(r.certificate->v == ZVec{1, 0});
        CHECK(verify_membership(heis_gaussian().pencil(), *r.certificate));
    }
    SUBCASE("rank-4 quotient")
    {
        auto r = delta_search(quotient_rank4().pencil());
        CHECK(r.delta == 4);
    }
    SUBCASE("Heisenberg sums certify delta = 2")
    {
        for (unsigned c : {2u, 3u, 4u}) {
            auto r = delta_search(heis_sum(c).pencil());
            CHECK(r.delta == 2);
        }
    }
}

TEST_CASE("upper bounds per rank, gcd, and refutation routes")
{
    SUBCASE("n = 1: rank")
    {
        auto r = upper_bound_d(heis().pencil());
        CHECK(r.method == UpperMethod::rank_n1);
        CHECK(r.d_upper == 2);
        CHECK(r.certified);
        auto q = upper_bound_d(quotient_rank4().pencil());
        CHECK(q.d_upper == 4);
    }
    SUBCASE("n = 2: binary gcd")
    {
        auto r = upper_bound_d(heis_gaussian().pencil());
        CHECK(r.method == UpperMethod::binary_gcd_n2);
        CHECK(r.d_upper == 2);
        CHECK(r.certified);
        // at d = 2 the gcd is constant: no distinguished hyperplane
        CHECK(!r.hyperplane_v.has_value());
    }
    SUBCASE("n = 3: refutation interval contains 2")
    {
        auto r = upper_bound_d(heis_sum(3).pencil());
        CHECK(r.method == UpperMethod::heuristic_interval);
        CHECK(!r.certified);
        CHECK(r.d_upper == 2);
        CHECK(r.heuristic_floor == 2);
    }
}

TEST_CASE("good prime bases")
{
    auto pencil = heis_gaussian().pencil();
    SUBCASE("p = 5 admits a low-rank basis")
    {
        auto s = good_prime_basis(pencil, 5, 2);
        REQUIRE(s.has_value());
        REQUIRE(s->basis.size() == 2);
        CHECK(s->ranks == std::vector<unsigned>{2, 2});
        // the two points solve a^2 + b^2 = 0 mod 5
        for (const auto& a : s->basis) {
            mpz_class norm = a[0] * a[0] + a[1] * a[1];
            CHECK(norm % 5 == 0);
        }
    }
    SUBCASE("p = 3 does not")
    {
        CHECK(!good_prime_basis(pencil, 3, 2).has_value());
    }
    SUBCASE("n = 1 is trivial")
    {
        auto s = good_prime_basis(heis().pencil(), 2, 2);
        REQUIRE(s.has_value());
        CHECK(s->basis == std::vector<ZVec>{{mpz_class(1)}});
    }
    SUBCASE("first fifteen odd primes split by residue mod 4")
    {
        mpz_class p = 3;
        for (int i = 0; i < 15; ++i) {
            bool good = good_prime_basis(pencil, p, 2).has_value();
            CHECK(good == (p % 4 == 1));
            p = next_prime(p);
        }
    }
    SUBCASE("scan window lists the good primes")
    {
        auto scan = scan_good_primes(pencil, 2, 10); // primes 2..29
        CHECK(scan.good == std::vector<mpz_class>{5, 13, 17, 29});
        CHECK(scan.skipped.empty());
        CHECK(scan.good.size() + scan.bad.size() == 10);
    }
}

TEST_CASE("analyze assembles tight verdicts on the flagships")
{
    SUBCASE("Heisenberg")
    {
        auto v = analyze(heis());
        CHECK(v.exponent_interval == std::pair<unsigned, unsigned>{3, 3});
        CHECK(v.tight);
        CHECK(verify_membership(heis().pencil(), v.lower_certificate));
    }
    SUBCASE("Gaussian Heisenberg")
    {
        auto v = analyze(heis_gaussian());
        CHECK(v.exponent_interval == std::pair<unsigned, unsigned>{3, 3});
        CHECK(v.tight);
        REQUIRE(v.upper_report.good_prime_sample.has_value());
        CHECK(v.upper_report.good_prime_sample->p == 5); // first good prime
    }
    SUBCASE("rank-4 quotient reaches exponent 5")
    {
        auto v = analyze(quotient_rank4());
        CHECK(v.exponent_interval == std::pair<unsigned, unsigned>{5, 5});
        CHECK(v.tight);
    }
    SUBCASE("invalid presentation is rejected")
    {
        GroupPresentation zero({IntMatrix(2, 2)});
        CHECK_THROWS_AS(analyze(zero), validation_error);
    }
}

TEST_CASE("delta and upper bound are invariant under unimodular changes")
{
    std::mt19937_64 rng(777);
    for (auto& pres : {heis(), heis_gaussian(), quotient_rank4()}) {
        auto pencil = pres.pencil();
        unsigned delta0 = delta_search(pencil).delta;
        unsigned upper0 = upper_bound_d(pencil).d_upper;
        for (int iter = 0; iter < 5; ++iter) {
            IntMatrix q = random_unimodular(rng, pencil.size());
            auto conj = pencil.basis_change(q);
            CHECK(delta_search(conj).delta == delta0);
            CHECK(upper_bound_d(conj).d_upper == upper0);
            if (pencil.nvars() >= 2) {
                IntMatrix pv = random_unimodular(rng, pencil.nvars());
                auto sub = pencil.variable_change(pv);
                CHECK(delta_search(sub).delta == delta0);
                CHECK(upper_bound_d(sub).d_upper == upper0);
            }
        }
    }
}

TEST_CASE("composed block minors match direct determinants")
{
    // guards the sign bookkeeping of the component route
    std::mt19937_64 rng(4096);
    for (int iter = 0; iter < 10; ++iter) {
        BlockPencil spec = random_block_pencil(rng, 2);
        auto pen = realize(spec);
        std::size_t m = pen.size();
        std::uniform_int_distribution<std::size_t> dd(1, std::min<std::size_t>(m, 4));
        std::size_t d = dd(rng);
        ZVec y{mpz_class(0), mpz_class(1)};
        CertifyOptions lazy;
        lazy.dense_budget = 0;
        std::optional<MembershipCertificate> cert;
        try {
            cert = membership(y, d, pen, lazy);
        } catch (const resource_error&) {
            continue;
        }
        if (cert)
            CHECK(verify_membership(pen, *cert));
    }
}
