#ifndef NILRF_DIVISIBILITY_HPP
#define NILRF_DIVISIBILITY_HPP

#include <optional>
#include <vector>

#include "nilrf/group.hpp"
#include "nilrf/intmat.hpp"

namespace nilrf {

// Data certifying the minimal separating quotient found for a central
// element: the prime power, the projection a, and the realizing pair of
// lattices. The index always factors as [Z^m : B] * [Z^n : D].
struct DivisibilityWitness {
    mpz_class p;
    unsigned k = 0;
    ZVec a;
    mpz_class index;
    Sublattice lattice_B; // in Z^m
    Sublattice lattice_D; // in Z^n
};

struct DivisibilityResult {
    mpz_class value;
    DivisibilityWitness witness;
};

struct DivisibilityOptions {
    unsigned jobs = 1;
    // Hard cap on the prime-power scan. The search derives its own bound and
    // certifies optimality whenever the minimum lies below the cap; it throws
    // resource_error otherwise instead of returning an unverified value.
    mpz_class prime_power_cap = mpz_class(1) << 24;
};

// Exact divisibility of the central element (0, v), v != 0: the minimum of
// |image of M_a mod p^k| * p^k over prime powers and primitive projections a
// with a^T v != 0 mod p^k. The scan is finite because every candidate value
// is at least p^k, so prime powers beyond the best value found cannot win.
DivisibilityResult divisibility_central(const GroupPresentation& pres, const ZVec& v,
                                        const DivisibilityOptions& opts = {});

struct OracleResult {
    mpz_class value;
    Sublattice lattice_B;
    Sublattice lattice_D;
};

// Independent route: enumerate all sublattices D of Z^n of index at most
// `index_bound` in Hermite form, take the largest B with phi(B, Z^m) inside
// D, and minimize the product index over D avoiding v. Exact (and equal to
// divisibility_central) whenever the returned value is within the bound.
std::optional<OracleResult> divisibility_oracle(const GroupPresentation& pres,
                                                const ZVec& v,
                                                const mpz_class& index_bound);

// Over-estimate from a fixed prime list: min p^{1 + rank_p(M_a)} over p in
// `primes` and projective a mod p with a^T v != 0 mod p. Empty optional when
// every prime in the list divides every entry of v.
std::optional<mpz_class>
divisibility_upper_primes(const GroupPresentation& pres, const ZVec& v,
                          const std::vector<mpz_class>& primes);

// Divisibility of a nonzero w inside Z^m: min over primes of p^{v_p(gcd w)+1}.
mpz_class abelian_divisibility(const ZVec& w);

struct RFProfilePoint {
    unsigned radius = 0;
    std::size_t ball_size = 0;
    mpz_class max_divisibility;
    GroupElement argmax;
    bool argmax_central = false; // exact value if central, abelian bound if not
};

// Per-radius maxima over the metric ball: exact central divisibility for
// (0, v), the Z^m divisibility bound for w != 0.
std::vector<RFProfilePoint> rf_profile(const GroupPresentation& pres, unsigned r_max,
                                       std::size_t ball_budget = 1'000'000);

} // namespace nilrf

#endif
