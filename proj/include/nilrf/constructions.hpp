#ifndef NILRF_CONSTRUCTIONS_HPP
#define NILRF_CONSTRUCTIONS_HPP

#include <optional>

#include "nilrf/group.hpp"

namespace nilrf {

// Q(sqrt(D)) for squarefree D, D != 0, 1.
class QuadraticField {
public:
    explicit QuadraticField(const mpz_class& disc);
    const mpz_class& disc() const { return disc_; }

private:
    mpz_class disc_;
};

// a + b * sqrt(D) with exact rational coordinates.
struct QuadNum {
    mpq_class a, b;

    QuadNum() = default;
    QuadNum(mpq_class a_, mpq_class b_) : a(std::move(a_)), b(std::move(b_)) {}

    QuadNum conj() const { return {a, mpq_class(-b)}; }
    bool operator==(const QuadNum& o) const = default;
};

QuadNum add(const QuadNum& x, const QuadNum& y);
QuadNum mul(const QuadNum& x, const QuadNum& y, const mpz_class& disc);

// The discrete Heisenberg group: m = 2, n = 1, the standard symplectic form.
GroupPresentation heisenberg();

// The Heisenberg group over the Gaussian integers: m = 4, n = 2.
GroupPresentation heisenberg_gaussian();

// Direct sum of `count` Heisenberg groups via diagonal Kronecker blocks.
GroupPresentation heisenberg_sum(unsigned count);

// Conjugate-averaged change of basis over Q(sqrt(D)) applied to the double
// Heisenberg sum; produces integral skew matrices presenting a group that is
// non-singular over Q while keeping the complex completion of the sum.
GroupPresentation galois_twist(const QuadraticField& field);

struct NonsingularSearch {
    std::optional<ZVec> counterexample; // w with phi(w, .) of deficient rank
    unsigned height_bound = 0;          // exhausted height when absent
};

// Refutation-only scan over primitive w of bounded height. An empty
// counterexample does not prove non-singularity.
NonsingularSearch nonsingular_over_Q_search(const GroupPresentation& pres,
                                            unsigned height_bound);

// m + 1 when non-singularity over Q is certified: full rank for n = 1, a
// rational-zero-free determinant form for n = 2. Nothing otherwise.
std::optional<unsigned> psi_nonsingular(const GroupPresentation& pres);

// Decision helper for the n = 2 certificate: does the binary form have a
// rational projective zero?
bool binary_form_has_rational_zero(const HomogeneousForm& g);

} // namespace nilrf

#endif
