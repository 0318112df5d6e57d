#ifndef NILRF_NUMERIC_HPP
#define NILRF_NUMERIC_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilrf {

using ZVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;

// Thrown when a configurable search/enumeration budget is exceeded.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a presentation or input file fails validation.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline mpz_class gcd(const mpz_class& a, const mpz_class& b)
{
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline mpz_class lcm(const mpz_class& a, const mpz_class& b)
{
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline mpz_class gcd(const ZVec& v)
{
    mpz_class g = 0;
    for (const auto& x : v)
        g = gcd(g, x);
    return g;
}

// lcm(1, 2, ..., kappa)
inline mpz_class lcm_upto(unsigned kappa)
{
    mpz_class l = 1;
    for (unsigned i = 2; i <= kappa; ++i)
        l = lcm(l, mpz_class(i));
    return l;
}

inline mpz_class pow(const mpz_class& base, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_zero(const ZVec& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

// Deterministic primality for p < 2^32 (Miller-Rabin with bases 2, 7, 61).
// Larger inputs are rejected: the desk-scale contract of this library does
// not need them and probabilistic answers would not be certificates.
bool is_prime(const mpz_class& p);

// Smallest prime strictly greater than n (n + 1 if that is prime).
mpz_class next_prime(const mpz_class& n);

// Strips the gcd so that gcd(v) = 1; throws on the zero vector.
ZVec primitive_part(const ZVec& v);

// FNV-1a over a byte string, rendered as 16 hex digits. Used as a cheap
// content digest for reports.
std::string fnv1a_hex(const std::string& bytes);

std::string to_string(const ZVec& v);

} // namespace nilrf

#endif
