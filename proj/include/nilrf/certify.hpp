#ifndef NILRF_CERTIFY_HPP
#define NILRF_CERTIFY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "nilrf/forms.hpp"
#include "nilrf/group.hpp"

namespace nilrf {

// One minor of a pencil, by sorted row/column index lists.
struct MinorRef {
    std::vector<std::size_t> rows, cols;
    bool operator==(const MinorRef& o) const = default;
};

// Exact identity (v^T x)^power = sum_i coeffs[i] * multipliers[i] * minor(refs[i]),
// where the minors have size d. power == d for plain ideal-degree membership;
// power > d multiplies the minors by the stored degree-(power-d) monomials.
struct MembershipCertificate {
    ZVec v;
    unsigned d = 0;
    unsigned power = 0;
    std::vector<MinorRef> refs;
    std::vector<Monomial> multipliers; // aligned with refs when power > d
    QVec coeffs;
    // Dense coefficients over the canonical deduplicated generator list, when
    // that list was materialized (small pencils). Free coordinates are zero.
    std::optional<QVec> lambda_canonical;
    bool lambda_integral = false;
};

struct CertifyOptions {
    unsigned height = 5;             // candidate-vector height bound
    std::size_t dense_budget = 80000;     // max minors for full enumeration
    std::size_t component_budget = 20000; // per-component minor enumeration cap
    std::size_t lazy_budget = 2'000'000;  // product-DFS node cap
    unsigned refute_points = 200;    // sample size for variety refutation
    unsigned prime_scan = 50;        // primes scanned for a good-prime sample
    unsigned long seed = 0;
};

// Does (v^T x)^d lie in the degree-d slice of the d-minor ideal? Exact; the
// certificate re-expands to the target identically.
std::optional<MembershipCertificate> membership(const ZVec& v, std::size_t d,
                                                const SymbolicPencil& M,
                                                const CertifyOptions& opts = {});

// Same with a higher power: (v^T x)^k against minors times degree-(k-d)
// monomials.
std::optional<MembershipCertificate> membership_power(const ZVec& v, std::size_t d,
                                                      unsigned k,
                                                      const SymbolicPencil& M,
                                                      const CertifyOptions& opts = {});

// Recompute the certificate's expansion from the pencil and compare.
bool verify_membership(const SymbolicPencil& M, const MembershipCertificate& cert);

struct DeltaResult {
    unsigned delta = 0;
    std::optional<MembershipCertificate> certificate;
};

// Largest d admitting an integral v with (v^T x)^d in I_d(M_x), searched
// over the hyperplane candidate from the binary gcd, the standard basis, and
// primitive vectors up to the height bound. Starts at the certified upper
// cap, below which the scan descends.
DeltaResult delta_search(const SymbolicPencil& M, const CertifyOptions& opts = {});
DeltaResult delta_search_below(const SymbolicPencil& M, std::size_t start_d,
                               const CertifyOptions& opts = {});

struct GoodPrimeSample {
    mpz_class p;
    std::vector<ZVec> basis;      // of Z_p^n
    std::vector<unsigned> ranks;  // rank of M_a mod p per basis vector
};

// A basis of Z_p^n all of whose contracted matrices have rank <= d_target
// mod p, or nothing when no such basis exists.
std::optional<GoodPrimeSample> good_prime_basis(const SymbolicPencil& M,
                                                const mpz_class& p, unsigned d_target);

struct PrimeScan {
    std::vector<mpz_class> good;
    std::vector<mpz_class> bad;
    std::vector<mpz_class> skipped; // projective enumeration over budget
};

PrimeScan scan_good_primes(const SymbolicPencil& M, unsigned d_target,
                           unsigned prime_count, std::size_t point_budget = 100000);

enum class UpperMethod { rank_n1, binary_gcd_n2, heuristic_interval };

struct UpperBoundReport {
    unsigned d_upper = 0;
    UpperMethod method = UpperMethod::rank_n1;
    bool certified = true; // exact for n <= 2; refutation-certified cap for n >= 3
    std::optional<ZVec> hyperplane_v;
    std::optional<GoodPrimeSample> good_prime_sample;
    std::vector<mpz_class> good_primes_window; // good primes among the first scanned
    // n >= 3 diagnostics: largest even d with a power-membership certificate.
    unsigned heuristic_floor = 0;
};

UpperBoundReport upper_bound_d(const SymbolicPencil& M, const CertifyOptions& opts = {});

struct RFVerdict {
    unsigned delta = 0;
    unsigned d_upper = 0;
    std::pair<unsigned, unsigned> exponent_interval{0, 0}; // {delta+1, d_upper+1}
    bool tight = false;
    MembershipCertificate lower_certificate;
    UpperBoundReport upper_report;
    unsigned candidate_height = 0;
};

// Full certified analysis of a presentation. Throws validation_error when the
// presentation is rejected and logic_error when an exactness guarantee fails
// internally.
RFVerdict analyze(const GroupPresentation& pres, const CertifyOptions& opts = {});

} // namespace nilrf

#endif
