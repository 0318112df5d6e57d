#ifndef NILRF_UNIPOLY_HPP
#define NILRF_UNIPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "nilrf/numeric.hpp"

namespace nilrf {

// Polynomial over Q in one variable, coefficients ascending by degree.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(QVec coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const mpq_class& c) { return UniPoly(QVec{c}); }
    static UniPoly variable() { return UniPoly(QVec{0, 1}); }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    mpq_class coeff(std::size_t i) const
    {
        return i < c_.size() ? c_[i] : mpq_class(0);
    }
    const mpq_class& lead() const { return c_.back(); }
    const QVec& coeffs() const { return c_; }

    bool operator==(const UniPoly& o) const = default;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(const mpq_class& c) const;
    mpq_class operator()(const mpq_class& x) const;

    // Euclidean division; divisor must be nonzero.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den);
    // Monic gcd (zero if both arguments are zero).
    static UniPoly gcd(UniPoly a, UniPoly b);

    UniPoly monic() const;

    // Multiplicity of the root at 0.
    unsigned valuation_at_zero() const;

    std::string to_string(const std::string& var = "t") const;

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    QVec c_;
};

// Determinant of the Sylvester-style matrix whose first deg(q2) columns hold
// shifted copies of q1 and remaining deg(q1) columns hold shifted copies of
// q2, coefficients ascending down each column. Nonzero iff q1 and q2 have no
// common complex root. Throws if either input is zero.
mpq_class resultant(const UniPoly& q1, const UniPoly& q2);

// Invariant factors of a matrix over the PID Q[t]: monic, each dividing the
// next, zeros trailing. Input is a dense rows x cols grid.
std::vector<UniPoly>
poly_invariant_factors(std::vector<std::vector<UniPoly>> a);

} // namespace nilrf

#endif
