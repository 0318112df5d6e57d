#ifndef NILRF_INTMAT_HPP
#define NILRF_INTMAT_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "nilrf/numeric.hpp"

namespace nilrf {

// Dense matrix over the integers, arbitrary precision, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, mpz_class(0)) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const;
    bool is_skew_symmetric() const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix scaled(const mpz_class& c) const;
    ZVec apply(const ZVec& w) const; // M * w

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& c);
    void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    // Fraction-free determinant (Bareiss). Requires a square matrix.
    mpz_class det() const;
    // Rank over the rationals.
    std::size_t rank() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> e_;
};

// P * M * Q = diag(factors), P and Q unimodular, factors non-negative with
// factors[i] | factors[i+1].
struct SNFResult {
    IntMatrix left;                 // P, rows x rows
    std::vector<mpz_class> diag;    // min(rows, cols) invariant factors
    IntMatrix right;                // Q, cols x cols

    IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const;
};

SNFResult snf(const IntMatrix& M);

// |image of w -> M w (mod p^k)| for square M. Throws if p is not prime.
mpz_class image_size_mod(const IntMatrix& M, const mpz_class& p, unsigned k);

// Full-rank sublattice of Z^n, stored as its column-style Hermite basis so
// that equal lattices compare equal.
class Sublattice {
public:
    Sublattice() = default;

    static Sublattice full(std::size_t n);
    // Columns of `gens` generate the lattice; must have full rank.
    static Sublattice from_generators(const IntMatrix& gens);

    std::size_t ambient_dim() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }
    mpz_class index() const; // [Z^n : L]
    bool contains(const ZVec& v) const;

    bool operator==(const Sublattice& o) const = default;

private:
    IntMatrix basis_; // n x n, lower-triangular HNF, positive diagonal
};

// {w : M w = 0 mod modulus} as a sublattice of Z^cols. modulus >= 1.
Sublattice kernel_mod(const IntMatrix& M, const mpz_class& modulus);
// Same, for modulus p^k with p checked prime.
Sublattice kernel_mod(const IntMatrix& M, const mpz_class& p, unsigned k);

// One sublattice D with Z^n / D cyclic of order p^k, together with the
// projection vector a defining it: D = {u : a^T u = 0 mod p^k}, gcd(a) = 1.
struct CyclicQuotientLattice {
    Sublattice lattice;
    ZVec projection;
};

// All such D exactly once, projections in canonical order.
std::vector<CyclicQuotientLattice>
enumerate_cyclic_quotient_lattices(std::size_t n, const mpz_class& p, unsigned k);

// The projection vectors of the enumeration above, without building the
// lattices: one canonical primitive a per cyclic quotient of order p^k.
std::vector<ZVec> cyclic_projections(std::size_t n, const mpz_class& p, unsigned k);

// Rank of M over Z_p for word-sized p; fast path used in prime scans.
std::size_t rank_mod_p(const IntMatrix& M, unsigned long p);

} // namespace nilrf

#endif
