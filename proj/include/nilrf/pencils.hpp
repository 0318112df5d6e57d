#ifndef NILRF_PENCILS_HPP
#define NILRF_PENCILS_HPP

#include <vector>

#include "nilrf/forms.hpp"

namespace nilrf {

// One canonical block of a skew pencil in two variables.
struct BlockSpec {
    enum class Kind { FiniteEigen, InfiniteEigen, Singular };

    Kind kind = Kind::FiniteEigen;
    unsigned k = 1;          // block parameter; sizes 2k, 2k, 2k+1
    mpq_class alpha = 0;     // eigenvalue, FiniteEigen only

    static BlockSpec finite(const mpq_class& alpha, unsigned k)
    {
        return {Kind::FiniteEigen, k, alpha};
    }
    static BlockSpec infinite(unsigned k) { return {Kind::InfiniteEigen, k, 0}; }
    static BlockSpec singular(unsigned k) { return {Kind::Singular, k, 0}; }

    std::size_t size() const { return kind == Kind::Singular ? 2 * k + 1 : 2 * k; }
};

// Block-diagonal skew pencil specification.
struct BlockPencil {
    std::vector<BlockSpec> blocks;
    std::size_t zero_padding = 0;

    std::size_t size() const
    {
        std::size_t s = zero_padding;
        for (const auto& b : blocks)
            s += b.size();
        return s;
    }
};

// Block-diagonal pencil with the exact entry patterns of the canonical
// blocks. A non-integral eigenvalue p/q is realized through the primitive
// form q*x - p*y, which generates the same minor ideals over Q.
SymbolicPencil realize(const BlockPencil& spec);

// 2(f + sum s_i - max s_i) with f summing (k-1) over finite blocks and k over
// the others; s_i counts blocks per distinct finite eigenvalue and the max
// term is 0 when no finite block is present.
unsigned d_y_formula(const BlockPencil& spec);

// True when letting the infinite-eigenvalue family compete in the max term
// would change the formula's value. The infinite blocks contribute no
// non-constant invariant factors after dehomogenization, so the reading used
// by d_y_formula excludes them; the flag marks specs where this matters.
bool d_y_readings_differ(const BlockPencil& spec);

// Largest d such that the gcd of the d x d minors is a nonzero constant
// after dehomogenizing at x2 = 1; equivalently the rank that the pencil
// keeps at every point with x2 != 0.
unsigned d_y_exact(const SymbolicPencil& m);

// The inner matrix whose minor ideals the block table describes: the k x k
// eigenvalue pattern for the two eigenvalue kinds, the full (2k+1) x (2k+1)
// skew block for the singular kind.
SymbolicMatrix block_reference_matrix(const BlockSpec& b);

// Claimed generator set for I_d of the reference matrix. Supported (kind, d)
// pairs: (eigen, k-1), (eigen, k), (singular, 2k), (singular, 2k+1).
std::vector<HomogeneousForm> block_minor_ideals(const BlockSpec& b, std::size_t d);

// Generators x^i y^{j-i} of the full degree-j ideal slice.
std::vector<HomogeneousForm> full_degree_ideal(unsigned j);

} // namespace nilrf

#endif
