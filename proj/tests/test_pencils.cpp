#include <doctest.h>

#include <random>

#include "nilrf/pencils.hpp"
#include "test_util.hpp"

using namespace nilrf;
using namespace nilrf::testutil;

namespace {

HomogeneousForm mono(Monomial e, long c)
{
    return HomogeneousForm::monomial(2, std::move(e), mpq_class(c));
}

bool spans_equal(const std::vector<HomogeneousForm>& a,
                 const std::vector<HomogeneousForm>& b, unsigned degree)
{
    // degree-graded comparison at the generators' degree and one above
    for (unsigned extra = 0; extra <= 1; ++extra) {
        FormSpan sa(2, degree + extra), sb(2, degree + extra);
        auto push = [&](FormSpan& span, const HomogeneousForm& f) {
            if (extra == 0) {
                span.add(f);
            } else {
                span.add(f * mono({1, 0}, 1));
                span.add(f * mono({0, 1}, 1));
            }
        };
        for (const auto& f : a)
            push(sa, f);
        for (const auto& f : b)
            push(sb, f);
        if (sa.dim() != sb.dim())
            return false;
        for (const auto& f : a) {
            if (extra == 0 && !sb.contains(f))
                return false;
        }
        for (const auto& f : b) {
            if (extra == 0 && !sa.contains(f))
                return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("realized canonical blocks")
{
    SUBCASE("finite eigenvalue zero, k = 1")
    {
        auto p = realize({{BlockSpec::finite(0, 1)}, 0});
        CHECK(p.size() == 2);
        CHECK(p.coefficient(0) == IntMatrix{{0, 1}, {-1, 0}});
        CHECK(p.coefficient(1) == IntMatrix(2, 2));
    }
    SUBCASE("infinite eigenvalue, k = 1")
    {
        auto p = realize({{BlockSpec::infinite(1)}, 0});
        CHECK(p.coefficient(0) == IntMatrix(2, 2));
        CHECK(p.coefficient(1) == IntMatrix{{0, 1}, {-1, 0}});
    }
    SUBCASE("singular block, k = 1")
    {
        auto p = realize({{BlockSpec::singular(1)}, 0});
        CHECK(p.size() == 3);
        // first column of the L pattern is (x, y)
        CHECK(p.matrix().entry(0, 2) == mono({1, 0}, 1));
        CHECK(p.matrix().entry(1, 2) == mono({0, 1}, 1));
        CHECK(p.matrix().entry(2, 0) == mono({1, 0}, -1));
        CHECK(p.matrix().entry(2, 1) == mono({0, 1}, -1));
    }
    SUBCASE("finite eigenvalue pattern, k = 2")
    {
        auto p = realize({{BlockSpec::finite(3, 2)}, 0});
        // top-right 2x2 block is [[0, x-3y], [x-3y, y]]
        CHECK(p.matrix().entry(0, 3) == mono({1, 0}, 1) + mono({0, 1}, -3));
        CHECK(p.matrix().entry(1, 2) == mono({1, 0}, 1) + mono({0, 1}, -3));
        CHECK(p.matrix().entry(1, 3) == mono({0, 1}, 1));
        CHECK(p.matrix().entry(0, 2).is_zero());
    }
    SUBCASE("rational eigenvalue is realized primitively")
    {
        auto p = realize({{BlockSpec::finite(mpq_class(1, 2), 1)}, 0});
        // 2x - y in the corner
        CHECK(p.matrix().entry(0, 1) == mono({1, 0}, 2) + mono({0, 1}, -1));
    }
    SUBCASE("zero padding contributes zero rows")
    {
        auto p = realize({{BlockSpec::finite(0, 1)}, 2});
        CHECK(p.size() == 4);
        CHECK(p.matrix().entry(2, 3).is_zero());
    }
    SUBCASE("realized pencils are skew")
    {
        std::mt19937_64 rng(31337);
        for (int iter = 0; iter < 30; ++iter) {
            auto spec = random_block_pencil(rng);
            auto p = realize(spec);
            for (std::size_t v = 0; v < 2; ++v)
                CHECK(p.coefficient(v).is_skew_symmetric());
        }
    }
}

TEST_CASE("d_y formula on worked block lists")
{
    CHECK(d_y_formula({{BlockSpec::infinite(1), BlockSpec::singular(1)}, 0}) == 4);
    CHECK(d_y_formula({{BlockSpec::finite(0, 1)}, 0}) == 0);
    CHECK(d_y_formula({{BlockSpec::finite(0, 1), BlockSpec::finite(1, 1)}, 0}) == 2);
    // repeated eigenvalue collapses into one family
    CHECK(d_y_formula({{BlockSpec::finite(0, 1), BlockSpec::finite(0, 1)}, 0}) == 0);

    CHECK(d_y_readings_differ({{BlockSpec::infinite(1), BlockSpec::infinite(1),
                                BlockSpec::finite(0, 1)},
                               0}));
    CHECK(!d_y_readings_differ({{BlockSpec::finite(0, 1)}, 0}));
}

TEST_CASE("d_y exact on worked pencils")
{
    CHECK(d_y_exact(realize({{BlockSpec::finite(0, 1), BlockSpec::finite(1, 1)}, 0})) == 2);
    SymbolicPencil z({IntMatrix(2, 2), IntMatrix(2, 2)});
    CHECK(d_y_exact(z) == 0);
    CHECK(d_y_exact(heis_gaussian().pencil()) == 2);
}

TEST_CASE("d_y exact agrees with the per-degree gcd characterization")
{
    std::mt19937_64 rng(8899);
    for (int iter = 0; iter < 25; ++iter) {
        BlockPencil spec = random_block_pencil(rng, 2);
        auto pen = realize(spec);
        unsigned fast = d_y_exact(pen);
        unsigned slow = 0;
        while (slow < pen.size()) {
            auto g = gcd_minors_binary(pen, slow + 1);
            if (g.is_zero() || g.dehomogenize().degree() != 0)
                break;
            ++slow;
        }
        CHECK(fast == slow);
    }
}

TEST_CASE("d_y exact equals d_y formula on realized specs")
{
    std::mt19937_64 rng(260131);
    for (int iter = 0; iter < 40; ++iter) {
        BlockPencil spec = random_block_pencil(rng);
        CHECK(d_y_exact(realize(spec)) == d_y_formula(spec));
    }
}

TEST_CASE("block minor ideal table")
{
    std::vector<mpq_class> alphas{0, 1, -2};
    for (unsigned k = 1; k <= 4; ++k) {
        // infinite eigenvalue pattern
        {
            auto b = BlockSpec::infinite(k);
            auto ref = block_reference_matrix(b);
            if (k >= 2)
                CHECK(spans_equal(minor_ideal_generators(ref, k - 1),
                                  block_minor_ideals(b, k - 1), k - 1));
            CHECK(spans_equal(minor_ideal_generators(ref, k),
                              block_minor_ideals(b, k), k));
        }
        for (const auto& alpha : alphas) {
            auto b = BlockSpec::finite(alpha, k);
            auto ref = block_reference_matrix(b);
            if (k >= 2)
                CHECK(spans_equal(minor_ideal_generators(ref, k - 1),
                                  block_minor_ideals(b, k - 1), k - 1));
            CHECK(spans_equal(minor_ideal_generators(ref, k),
                              block_minor_ideals(b, k), k));
        }
        // singular block
        {
            auto b = BlockSpec::singular(k);
            auto ref = block_reference_matrix(b);
            CHECK(spans_equal(minor_ideal_generators(ref, 2 * k),
                              block_minor_ideals(b, 2 * k), 2 * k));
            // odd-size skew determinant vanishes
            CHECK(minor_ideal_generators(ref, 2 * k + 1).empty());
            CHECK(block_minor_ideals(b, 2 * k + 1).empty());
        }
    }
    CHECK_THROWS_AS(block_minor_ideals(BlockSpec::infinite(2), 4), std::invalid_argument);
}

TEST_CASE("coprime powers assemble the full degree slice")
{
    // span of (x - a y)^{r1} H_{r2-1} together with (x - a' y)^{r2} H_{r1-1}
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
                        span.add(f1 * mono({i, r2 - 1 - i}, 1));
                    for (unsigned i = 0; i < r1; ++i)
                        span.add(f2 * mono({i, r1 - 1 - i}, 1));
                    CHECK(span.dim() == deg + 1); // full space
                }
        }
}

TEST_CASE("minor ideals are congruence invariants")
{
    std::mt19937_64 rng(5297);
    auto gp = heis_gaussian().pencil();
    for (int iter = 0; iter < 10; ++iter) {
        IntMatrix q = random_unimodular(rng, 4);
        auto conj = gp.basis_change(q);
        for (std::size_t d = 1; d <= 4; ++d) {
            auto a = minor_ideal_generators(gp, d);
            auto b = minor_ideal_generators(conj, d);
            if (a.empty() && b.empty())
                continue;
            CHECK(spans_equal(a, b, static_cast<unsigned>(d)));
        }
    }
}
