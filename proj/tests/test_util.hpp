#ifndef NILRF_TEST_UTIL_HPP
#define NILRF_TEST_UTIL_HPP

#include <random>

#include "nilrf/group.hpp"
#include "nilrf/pencils.hpp"

namespace nilrf::testutil {

inline GroupPresentation heis()
{
    return GroupPresentation({IntMatrix{{0, 1}, {-1, 0}}}, "heisenberg");
}

inline GroupPresentation heis_gaussian()
{
    IntMatrix a1{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    IntMatrix a2{{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    return GroupPresentation({a1, a2}, "heisenberg-gaussian");
}

// The rank-4 single-matrix quotient of the Gaussian Heisenberg group.
inline GroupPresentation quotient_rank4()
{
    IntMatrix a{{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    return GroupPresentation({a}, "gaussian-quotient");
}

// Product of a few elementary operations; determinant +-1 by construction.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, unsigned steps = 6)
{
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    IntMatrix q = IntMatrix::identity(n);
    for (unsigned s = 0; s < steps; ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        q.add_row_multiple(i, j, coef(rng));
    }
    if (n > 1 && (rng() & 1))
        q.swap_rows(0, 1);
    if (rng() & 1)
        q.negate_row(0);
    return q;
}

// Seeded random block pencil: up to max_blocks blocks, parameters k <= 3,
// eigenvalues drawn from a small rational pool.
inline BlockPencil random_block_pencil(std::mt19937_64& rng, unsigned max_blocks = 4)
{
    static const std::vector<mpq_class> pool = {
        mpq_class(0), mpq_class(1), mpq_class(-1), mpq_class(2),
        mpq_class(-2), mpq_class(1, 2), mpq_class(-3, 2),
    };
    std::uniform_int_distribution<unsigned> nblocks(1, max_blocks);
    std::uniform_int_distribution<unsigned> kdist(1, 3);
    std::uniform_int_distribution<unsigned> kind(0, 2);
    std::uniform_int_distribution<std::size_t> alpha(0, pool.size() - 1);
    std::uniform_int_distribution<unsigned> pad(0, 2);
    BlockPencil spec;
    unsigned count = nblocks(rng);
    for (unsigned b = 0; b < count; ++b) {
        switch (kind(rng)) {
        case 0:
            spec.blocks.push_back(BlockSpec::finite(pool[alpha(rng)], kdist(rng)));
            break;
        case 1:
            spec.blocks.push_back(BlockSpec::infinite(kdist(rng)));
            break;
        default:
            spec.blocks.push_back(BlockSpec::singular(kdist(rng)));
            break;
        }
    }
    spec.zero_padding = pad(rng);
    return spec;
}

} // namespace nilrf::testutil

#endif
