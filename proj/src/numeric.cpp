#include "nilrf/numeric.hpp"

#include <cstdint>
#include <sstream>

namespace nilrf {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1)
            r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(std::uint64_t n, std::uint64_t a)
{
    if (a % n == 0)
        return true;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace

bool is_prime(const mpz_class& p)
{
    if (p < 2)
        return false;
    if (!p.fits_ulong_p() || p.get_ui() > 0xffffffffUL)
        throw std::invalid_argument(
            "is_prime: inputs >= 2^32 are not supported (desk-scale contract)");
    std::uint64_t n = p.get_ui();
    for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n == q)
            return true;
        if (n % q == 0)
            return false;
    }
    // Bases 2, 7, 61 are a deterministic witness set below 4759123141.
    for (std::uint64_t a : {2u, 7u, 61u})
        if (!miller_rabin(n, a))
            return false;
    return true;
}

mpz_class next_prime(const mpz_class& n)
{
    mpz_class c = n + 1;
    if (c <= 2)
        return 2;
    if (c % 2 == 0)
        ++c;
    while (!is_prime(c))
        c += 2;
    return c;
}

ZVec primitive_part(const ZVec& v)
{
    mpz_class g = gcd(v);
    if (g == 0)
        throw std::invalid_argument("primitive_part: zero vector");
    ZVec r = v;
    for (auto& x : r)
        x /= g;
    return r;
}

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i)
        os << "0123456789abcdef"[(h >> (4 * i)) & 0xf];
    return os.str();
}

std::string to_string(const ZVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

} // namespace nilrf
