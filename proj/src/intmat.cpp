#include "nilrf/intmat.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace nilrf {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long x : r)
            e_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const
{
    for (const auto& x : e_)
        if (x != 0)
            return false;
    return true;
}

bool IntMatrix::is_skew_symmetric() const
{
    if (!is_square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (at(i, j) != -at(j, i))
                return false;
    return true;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    if (cols_ != o.rows_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& a = at(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
    IntMatrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] += o.e_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
    IntMatrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] -= o.e_[i];
    return r;
}

IntMatrix IntMatrix::scaled(const mpz_class& c) const
{
    IntMatrix r = *this;
    for (auto& x : r.e_)
        x *= c;
    return r;
}

ZVec IntMatrix::apply(const ZVec& w) const
{
    if (w.size() != cols_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in apply");
    ZVec r(rows_, mpz_class(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r[i] += at(i, j) * w[j];
    return r;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& c)
{
    for (std::size_t j = 0; j < cols_; ++j)
        at(dst, j) += c * at(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& c)
{
    for (std::size_t i = 0; i < rows_; ++i)
        at(i, dst) += c * at(i, src);
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t j = 0; j < cols_; ++j)
        at(i, j) = -at(i, j);
}

void IntMatrix::negate_col(std::size_t j)
{
    for (std::size_t i = 0; i < rows_; ++i)
        at(i, j) = -at(i, j);
}

mpz_class IntMatrix::det() const
{
    if (!is_square())
        throw std::invalid_argument("IntMatrix::det: not square");
    std::size_t n = rows_;
    if (n == 0)
        return 1;
    IntMatrix b = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (b.at(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && b.at(piv, k) == 0)
                ++piv;
            if (piv == n)
                return 0;
            b.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = b.at(i, j) * b.at(k, k) - b.at(i, k) * b.at(k, j);
                mpz_divexact(b.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            b.at(i, k) = 0;
        }
        prev = b.at(k, k);
    }
    mpz_class d = b.at(n - 1, n - 1);
    return sign > 0 ? d : mpz_class(-d);
}

std::size_t IntMatrix::rank() const
{
    IntMatrix b = *this;
    std::size_t rank = 0;
    std::size_t col = 0;
    // Fraction-free echelon; only the zero/nonzero pattern matters.
    for (; col < cols_ && rank < rows_; ++col) {
        std::size_t piv = rank;
        while (piv < rows_ && b.at(piv, col) == 0)
            ++piv;
        if (piv == rows_)
            continue;
        b.swap_rows(rank, piv);
        for (std::size_t i = rank + 1; i < rows_; ++i) {
            if (b.at(i, col) == 0)
                continue;
            mpz_class a = b.at(rank, col), c = b.at(i, col);
            for (std::size_t j = col; j < cols_; ++j)
                b.at(i, j) = b.at(i, j) * a - b.at(rank, j) * c;
        }
        ++rank;
    }
    return rank;
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMatrix SNFResult::diagonal_matrix(std::size_t rows, std::size_t cols) const
{
    IntMatrix d(rows, cols);
    for (std::size_t i = 0; i < diag.size(); ++i)
        d.at(i, i) = diag[i];
    return d;
}

namespace {

// Floor quotient; remainders end up in [0, |divisor|).
mpz_class fdiv_q(const mpz_class& a, const mpz_class& b)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Reduce A to diagonal form by unimodular row/col operations mirrored in P, Q.
void diagonalize(IntMatrix& A, IntMatrix& P, IntMatrix& Q)
{
    std::size_t r = A.rows(), c = A.cols();
    std::size_t k = std::min(r, c);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing submatrix becomes the pivot.
            std::size_t pi = r, pj = c;
            mpz_class best;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    const mpz_class& x = A.at(i, j);
                    if (x == 0)
                        continue;
                    mpz_class ax = abs(x);
                    if (pi == r || ax < best) {
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == r)
                return; // trailing submatrix is zero
            A.swap_rows(t, pi);
            P.swap_rows(t, pi);
            A.swap_cols(t, pj);
            Q.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (A.at(i, t) == 0)
                    continue;
                mpz_class q = fdiv_q(A.at(i, t), A.at(t, t));
                if (q != 0) {
                    A.add_row_multiple(i, t, -q);
                    P.add_row_multiple(i, t, -q);
                }
                if (A.at(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (A.at(t, j) == 0)
                    continue;
                mpz_class q = fdiv_q(A.at(t, j), A.at(t, t));
                if (q != 0) {
                    A.add_col_multiple(j, t, -q);
                    Q.add_col_multiple(j, t, -q);
                }
                if (A.at(t, j) != 0)
                    clean = false;
            }
            if (clean)
                break; // column below and row right of the pivot are zero
        }
    }
}

} // namespace

SNFResult snf(const IntMatrix& M)
{
    std::size_t r = M.rows(), c = M.cols();
    IntMatrix A = M;
    IntMatrix P = IntMatrix::identity(r);
    IntMatrix Q = IntMatrix::identity(c);
    std::size_t k = std::min(r, c);

    for (int guard = 0;; ++guard) {
        if (guard > 4096)
            throw std::runtime_error("snf: divisibility chain did not stabilize");
        diagonalize(A, P, Q);
        std::size_t bad = k;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            const mpz_class& a = A.at(i, i);
            const mpz_class& b = A.at(i + 1, i + 1);
            if ((a == 0 && b != 0) || (a != 0 && b != 0 && b % a != 0)) {
                bad = i;
                break;
            }
        }
        if (bad == k)
            break;
        if (A.at(bad, bad) == 0) {
            A.swap_rows(bad, bad + 1);
            P.swap_rows(bad, bad + 1);
            A.swap_cols(bad, bad + 1);
            Q.swap_cols(bad, bad + 1);
        } else {
            // Couple the two diagonal entries; re-elimination leaves gcd/lcm.
            A.add_col_multiple(bad, bad + 1, 1);
            Q.add_col_multiple(bad, bad + 1, 1);
        }
    }

    for (std::size_t i = 0; i < k; ++i) {
        if (A.at(i, i) < 0) {
            A.negate_row(i);
            P.negate_row(i);
        }
    }

    SNFResult res;
    res.left = std::move(P);
    res.right = std::move(Q);
    res.diag.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        res.diag.push_back(A.at(i, i));
    return res;
}

mpz_class image_size_mod(const IntMatrix& M, const mpz_class& p, unsigned k)
{
    if (!M.is_square())
        throw std::invalid_argument("image_size_mod: matrix must be square");
    if (k < 1)
        throw std::invalid_argument("image_size_mod: k must be >= 1");
    if (!is_prime(p))
        throw std::invalid_argument("image_size_mod: p is not prime");
    mpz_class pk = pow(p, k);
    SNFResult s = snf(M);
    mpz_class size = pow(pk, M.rows());
    for (const auto& mu : s.diag) {
        mpz_class g = gcd(mu, pk);
        mpz_divexact(size.get_mpz_t(), size.get_mpz_t(), g.get_mpz_t());
    }
    return size;
}

namespace {

// Column-style Hermite form of the column span; requires full row rank.
IntMatrix hnf_columns(IntMatrix a)
{
    std::size_t n = a.rows(), s = a.cols();
    for (std::size_t row = 0; row < n; ++row) {
        if (row >= s)
            throw std::invalid_argument("Sublattice: generators do not span a full-rank lattice");
        for (;;) {
            std::size_t pj = s;
            mpz_class best;
            for (std::size_t j = row; j < s; ++j) {
                const mpz_class& x = a.at(row, j);
                if (x == 0)
                    continue;
                mpz_class ax = abs(x);
                if (pj == s || ax < best) {
                    best = ax;
                    pj = j;
                }
            }
            if (pj == s)
                throw std::invalid_argument("Sublattice: generators do not span a full-rank lattice");
            a.swap_cols(row, pj);
            bool clean = true;
            for (std::size_t j = row + 1; j < s; ++j) {
                if (a.at(row, j) == 0)
                    continue;
                mpz_class q = fdiv_q(a.at(row, j), a.at(row, row));
                if (q != 0)
                    a.add_col_multiple(j, row, -q);
                if (a.at(row, j) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (a.at(row, row) < 0)
            a.negate_col(row);
        for (std::size_t j = 0; j < row; ++j) {
            mpz_class q = fdiv_q(a.at(row, j), a.at(row, row));
            if (q != 0)
                a.add_col_multiple(j, row, -q);
        }
    }
    IntMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h.at(i, j) = a.at(i, j);
    return h;
}

} // namespace

Sublattice Sublattice::full(std::size_t n)
{
    Sublattice l;
    l.basis_ = IntMatrix::identity(n);
    return l;
}

Sublattice Sublattice::from_generators(const IntMatrix& gens)
{
    Sublattice l;
    l.basis_ = hnf_columns(gens);
    return l;
}

mpz_class Sublattice::index() const
{
    mpz_class idx = 1;
    for (std::size_t i = 0; i < basis_.rows(); ++i)
        idx *= basis_.at(i, i);
    return idx;
}

bool Sublattice::contains(const ZVec& v) const
{
    std::size_t n = basis_.rows();
    if (v.size() != n)
        throw std::invalid_argument("Sublattice::contains: dimension mismatch");
    ZVec x(n);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class acc = v[i];
        for (std::size_t j = 0; j < i; ++j)
            acc -= basis_.at(i, j) * x[j];
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(),
                    basis_.at(i, i).get_mpz_t());
        if (r != 0)
            return false;
        x[i] = q;
    }
    return true;
}

Sublattice kernel_mod(const IntMatrix& M, const mpz_class& modulus)
{
    if (modulus < 1)
        throw std::invalid_argument("kernel_mod: modulus must be >= 1");
    std::size_t c = M.cols();
    SNFResult s = snf(M);
    // In coordinates u = Q^{-1} w the constraints decouple to mu_i u_i = 0
    // (mod modulus), so the kernel is Q * diag(modulus / gcd(mu_i, modulus)).
    IntMatrix d(c, c);
    for (std::size_t i = 0; i < c; ++i) {
        if (i < s.diag.size()) {
            mpz_class g = gcd(s.diag[i], modulus);
            mpz_class t;
            mpz_divexact(t.get_mpz_t(), modulus.get_mpz_t(), g.get_mpz_t());
            d.at(i, i) = t;
        } else {
            d.at(i, i) = 1;
        }
    }
    return Sublattice::from_generators(s.right * d);
}

Sublattice kernel_mod(const IntMatrix& M, const mpz_class& p, unsigned k)
{
    if (k < 1)
        throw std::invalid_argument("kernel_mod: k must be >= 1");
    if (!is_prime(p))
        throw std::invalid_argument("kernel_mod: p is not prime");
    return kernel_mod(M, pow(p, k));
}

std::vector<ZVec> cyclic_projections(std::size_t n, const mpz_class& p, unsigned k)
{
    if (n < 1)
        throw std::invalid_argument("cyclic_projections: n must be >= 1");
    if (k < 1)
        throw std::invalid_argument("cyclic_projections: k must be >= 1");
    if (!is_prime(p))
        throw std::invalid_argument("cyclic_projections: p is not prime");

    mpz_class pk = pow(p, k);
    mpz_class pk1 = pow(p, k - 1); // choices per non-unit coordinate

    std::vector<ZVec> out;
    // Canonical representative per lattice: the first coordinate that is a
    // unit mod p is scaled to 1; earlier coordinates are then multiples of p.
    for (std::size_t pivot = 0; pivot < n; ++pivot) {
        std::vector<std::size_t> free_pos;
        for (std::size_t j = 0; j < n; ++j)
            if (j != pivot)
                free_pos.push_back(j);
        std::vector<mpz_class> digits(free_pos.size(), mpz_class(0));
        for (;;) {
            ZVec a(n);
            a[pivot] = 1;
            for (std::size_t t = 0; t < free_pos.size(); ++t) {
                std::size_t j = free_pos[t];
                a[j] = (j < pivot) ? mpz_class(digits[t] * p) : digits[t];
            }
            out.push_back(std::move(a));

            // odometer, least significant digit last
            std::size_t t = free_pos.size();
            while (t > 0) {
                --t;
                const mpz_class& radix = (free_pos[t] < pivot) ? pk1 : pk;
                digits[t] += 1;
                if (digits[t] < radix)
                    break;
                digits[t] = 0;
                if (t == 0) {
                    t = free_pos.size() + 1; // carried past the first digit
                    break;
                }
            }
            if (free_pos.empty() || t == free_pos.size() + 1)
                break;
        }
    }
    return out;
}

std::vector<CyclicQuotientLattice>
enumerate_cyclic_quotient_lattices(std::size_t n, const mpz_class& p, unsigned k)
{
    mpz_class pk = pow(p, k);
    std::vector<CyclicQuotientLattice> out;
    for (auto& a : cyclic_projections(n, p, k)) {
        IntMatrix row(1, n);
        for (std::size_t j = 0; j < n; ++j)
            row.at(0, j) = a[j];
        out.push_back({kernel_mod(row, pk), std::move(a)});
    }
    return out;
}

std::size_t rank_mod_p(const IntMatrix& M, unsigned long p)
{
    std::size_t r = M.rows(), c = M.cols();
    std::vector<std::uint64_t> a(r * c);
    mpz_class pz(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            mpz_class v = M.at(i, j) % pz;
            if (v < 0)
                v += pz;
            a[i * c + j] = v.get_ui();
        }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && a[piv * c + col] == 0)
            ++piv;
        if (piv == r)
            continue;
        std::swap_ranges(a.begin() + rank * c, a.begin() + (rank + 1) * c,
                         a.begin() + piv * c);
        std::uint64_t inv = 1, base = a[rank * c + col] % p, e = p - 2;
        while (e) { // Fermat inverse
            if (e & 1)
                inv = static_cast<std::uint64_t>(
                    (static_cast<unsigned __int128>(inv) * base) % p);
            base = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(base) * base) % p);
            e >>= 1;
        }
        for (std::size_t i = rank + 1; i < r; ++i) {
            std::uint64_t f = a[i * c + col];
            if (f == 0)
                continue;
            std::uint64_t mult = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(f) * inv) % p);
            for (std::size_t j = col; j < c; ++j) {
                std::uint64_t sub = static_cast<std::uint64_t>(
                    (static_cast<unsigned __int128>(mult) * a[rank * c + j]) % p);
                a[i * c + j] = (a[i * c + j] + p - sub) % p;
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace nilrf
