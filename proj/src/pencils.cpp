#include "nilrf/pencils.hpp"

#include <algorithm>
#include <map>

namespace nilrf {

namespace {

// Linear form in (x, y) as an integer coefficient pair.
struct Lin {
    mpz_class x, y;
};

// First argument of the eigenvalue pattern: y for the infinite kind,
// q*x - p*y for alpha = p/q.
Lin pattern_a(const BlockSpec& b)
{
    if (b.kind == BlockSpec::Kind::InfiniteEigen)
        return {0, 1};
    return {b.alpha.get_den(), mpz_class(-b.alpha.get_num())};
}

Lin pattern_b(const BlockSpec& b)
{
    if (b.kind == BlockSpec::Kind::InfiniteEigen)
        return {1, 0};
    return {0, 1};
}

// k x k pattern with `a` on the anti-diagonal and `b` just below it.
void fill_eigen_pattern(SymbolicMatrix& m, std::size_t row0, std::size_t col0,
                        unsigned k, const Lin& a, const Lin& b, bool negate)
{
    int s = negate ? -1 : 1;
    for (unsigned i = 0; i < k; ++i) {
        m.set_entry(row0 + i, col0 + (k - 1 - i), {s * a.x, s * a.y});
        if (i >= 1)
            m.set_entry(row0 + i, col0 + (k - i), {s * b.x, s * b.y});
    }
}

// (k+1) x k pattern with x on the diagonal and y below it.
void fill_singular_pattern(SymbolicMatrix& m, std::size_t row0, std::size_t col0,
                           unsigned k, bool transposed_negated)
{
    for (unsigned j = 0; j < k; ++j) {
        if (!transposed_negated) {
            m.set_entry(row0 + j, col0 + j, {1, 0});
            m.set_entry(row0 + j + 1, col0 + j, {0, 1});
        } else {
            m.set_entry(row0 + j, col0 + j, {-1, 0});
            m.set_entry(row0 + j, col0 + j + 1, {0, -1});
        }
    }
}

} // namespace

SymbolicPencil realize(const BlockPencil& spec)
{
    std::size_t m = spec.size();
    if (m == 0)
        throw std::invalid_argument("realize: empty pencil");
    SymbolicMatrix grid(m, m, 2);
    std::size_t off = 0;
    for (const auto& b : spec.blocks) {
        if (b.k < 1)
            throw std::invalid_argument("realize: block parameter must be >= 1");
        if (b.kind == BlockSpec::Kind::Singular) {
            // [[0, L], [-L^T, 0]] with L the (k+1) x k singular pattern
            fill_singular_pattern(grid, off, off + b.k + 1, b.k, false);
            fill_singular_pattern(grid, off + b.k + 1, off, b.k, true);
        } else {
            Lin a = pattern_a(b), bb = pattern_b(b);
            fill_eigen_pattern(grid, off, off + b.k, b.k, a, bb, false);
            fill_eigen_pattern(grid, off + b.k, off, b.k, a, bb, true);
        }
        off += b.size();
    }
    return SymbolicPencil(grid.coefficients());
}

unsigned d_y_formula(const BlockPencil& spec)
{
    unsigned f = 0;
    std::map<mpq_class, unsigned> families; // finite eigenvalues
    for (const auto& b : spec.blocks) {
        if (b.kind == BlockSpec::Kind::FiniteEigen) {
            f += b.k - 1;
            families[b.alpha] += 1;
        } else {
            f += b.k;
        }
    }
    unsigned total = 0, largest = 0;
    for (const auto& [alpha, count] : families) {
        total += count;
        largest = std::max(largest, count);
    }
    return 2 * (f + total - largest);
}

bool d_y_readings_differ(const BlockPencil& spec)
{
    unsigned infinite = 0, largest_finite = 0;
    std::map<mpq_class, unsigned> families;
    for (const auto& b : spec.blocks) {
        if (b.kind == BlockSpec::Kind::InfiniteEigen)
            ++infinite;
        else if (b.kind == BlockSpec::Kind::FiniteEigen)
            families[b.alpha] += 1;
    }
    for (const auto& [alpha, count] : families)
        largest_finite = std::max(largest_finite, count);
    return infinite > largest_finite && infinite > 0;
}

unsigned d_y_exact(const SymbolicPencil& m)
{
    if (m.nvars() != 2)
        throw std::invalid_argument("d_y_exact: two-variable pencils only");
    // gcd_minors_binary(m, d) dehomogenizes to a nonzero constant exactly
    // when the first d invariant factors of t A1 + A2 are units, so one
    // elimination answers every d at once.
    std::size_t size = m.size();
    const IntMatrix& a1 = m.coefficient(0);
    const IntMatrix& a2 = m.coefficient(1);
    std::vector<std::vector<UniPoly>> grid(size, std::vector<UniPoly>(size));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            grid[i][j] = UniPoly(QVec{mpq_class(a2.at(i, j)), mpq_class(a1.at(i, j))});
    auto inv = poly_invariant_factors(std::move(grid));
    UniPoly one = UniPoly::constant(1);
    unsigned d = 0;
    while (d < inv.size() && inv[d] == one)
        ++d;
    return d;
}

SymbolicMatrix block_reference_matrix(const BlockSpec& b)
{
    if (b.k < 1)
        throw std::invalid_argument("block_reference_matrix: k must be >= 1");
    if (b.kind == BlockSpec::Kind::Singular) {
        BlockPencil p;
        p.blocks = {b};
        return realize(p).matrix();
    }
    SymbolicMatrix grid(b.k, b.k, 2);
    fill_eigen_pattern(grid, 0, 0, b.k, pattern_a(b), pattern_b(b), false);
    return grid;
}

std::vector<HomogeneousForm> full_degree_ideal(unsigned j)
{
    std::vector<HomogeneousForm> gens;
    for (unsigned i = 0; i <= j; ++i)
        gens.push_back(HomogeneousForm::monomial(2, Monomial{i, j - i}, 1));
    return gens;
}

std::vector<HomogeneousForm> block_minor_ideals(const BlockSpec& b, std::size_t d)
{
    unsigned k = b.k;
    switch (b.kind) {
    case BlockSpec::Kind::InfiniteEigen:
        if (d == k - 1)
            return full_degree_ideal(k - 1);
        if (d == k)
            return {HomogeneousForm::monomial(2, Monomial{0, k}, 1)};
        break;
    case BlockSpec::Kind::FiniteEigen:
        if (d == k - 1)
            return full_degree_ideal(k - 1);
        if (d == k) {
            Lin a = pattern_a(b);
            return {HomogeneousForm::linear(ZVec{a.x, a.y}).pow(k).normalized()};
        }
        break;
    case BlockSpec::Kind::Singular:
        if (d == 2 * k)
            return full_degree_ideal(2 * k);
        if (d == 2 * k + 1)
            return {};
        break;
    }
    throw std::invalid_argument("block_minor_ideals: unsupported (kind, d) combination");
}

} // namespace nilrf
