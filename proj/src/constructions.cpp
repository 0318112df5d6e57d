#include "nilrf/constructions.hpp"

#include <algorithm>

#include "nilrf/forms.hpp"

namespace nilrf {

QuadraticField::QuadraticField(const mpz_class& disc) : disc_(disc)
{
    if (disc == 0 || disc == 1)
        throw std::invalid_argument("QuadraticField: discriminant must not be 0 or 1");
    mpz_class a = abs(disc);
    for (mpz_class d = 2; d * d <= a; ++d)
        if (a % (d * d) == 0)
            throw std::invalid_argument("QuadraticField: discriminant must be squarefree");
}

QuadNum add(const QuadNum& x, const QuadNum& y)
{
    return {mpq_class(x.a + y.a), mpq_class(x.b + y.b)};
}

QuadNum mul(const QuadNum& x, const QuadNum& y, const mpz_class& disc)
{
    return {mpq_class(x.a * y.a + disc * x.b * y.b), mpq_class(x.a * y.b + x.b * y.a)};
}

GroupPresentation heisenberg()
{
    return GroupPresentation({IntMatrix{{0, 1}, {-1, 0}}}, "heisenberg");
}

GroupPresentation heisenberg_gaussian()
{
    IntMatrix a1{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    IntMatrix a2{{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    return GroupPresentation({a1, a2}, "heisenberg-gaussian");
}

GroupPresentation heisenberg_sum(unsigned count)
{
    if (count < 1)
        throw std::invalid_argument("heisenberg_sum: count must be >= 1");
    std::vector<IntMatrix> mats;
    mats.reserve(count);
    for (unsigned i = 0; i < count; ++i) {
        IntMatrix a(2 * count, 2 * count);
        a.at(2 * i, 2 * i + 1) = 1;
        a.at(2 * i + 1, 2 * i) = -1;
        mats.push_back(std::move(a));
    }
    return GroupPresentation(std::move(mats),
                             count == 1 ? "heisenberg" : "heisenberg-sum-" + std::to_string(count));
}

namespace {

using QuadMat = std::vector<std::vector<QuadNum>>;

QuadMat qm_zero(std::size_t r, std::size_t c)
{
    return QuadMat(r, std::vector<QuadNum>(c));
}

QuadMat qm_mul(const QuadMat& x, const QuadMat& y, const mpz_class& disc)
{
    std::size_t r = x.size(), mid = y.size(), c = y[0].size();
    QuadMat out = qm_zero(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < mid; ++k) {
            if (x[i][k] == QuadNum{})
                continue;
            for (std::size_t j = 0; j < c; ++j)
                out[i][j] = add(out[i][j], mul(x[i][k], y[k][j], disc));
        }
    return out;
}

QuadMat qm_transpose(const QuadMat& x)
{
    QuadMat out = qm_zero(x[0].size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x[0].size(); ++j)
            out[j][i] = x[i][j];
    return out;
}

} // namespace

GroupPresentation galois_twist(const QuadraticField& field)
{
    const mpz_class& disc = field.disc();
    const unsigned n = 2;
    const std::size_t m = 2 * n;

    // alpha = sqrt(D); powers alpha^1, alpha^2 and their conjugates
    QuadNum alpha{0, 1};
    std::vector<QuadNum> powers{alpha, mul(alpha, alpha, disc)}; // alpha^1, alpha^2

    // (E)_{k,l} = sigma_k(alpha^{l+1}); sigma_1 = id, sigma_2 = conjugation
    QuadMat e = qm_zero(n, n);
    for (std::size_t l = 0; l < n; ++l) {
        e[0][l] = powers[l];
        e[1][l] = powers[l].conj();
    }

    // E tensor 1_2
    QuadMat e2 = qm_zero(m, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < 2; ++t)
                e2[2 * i + t][2 * j + t] = e[i][j];

    // M_i = (E tensor 1_2)^T (A_i tensor J) (E tensor 1_2)
    std::vector<QuadMat> mi;
    for (std::size_t i = 0; i < n; ++i) {
        QuadMat aj = qm_zero(m, m);
        aj[2 * i][2 * i + 1] = QuadNum{1, 0};
        aj[2 * i + 1][2 * i] = QuadNum{-1, 0};
        mi.push_back(qm_mul(qm_mul(qm_transpose(e2), aj, disc), e2, disc));
    }

    // B_j = sum_i sigma_i(alpha^j) M_i; Galois-stable, hence rational, and
    // integral because it is assembled from algebraic integers.
    std::vector<IntMatrix> bs;
    for (std::size_t j = 0; j < n; ++j) {
        QuadMat acc = qm_zero(m, m);
        for (std::size_t i = 0; i < n; ++i) {
            QuadNum scale = (i == 0) ? powers[j] : powers[j].conj();
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c)
                    acc[r][c] = add(acc[r][c], mul(scale, mi[i][r][c], disc));
        }
        IntMatrix b(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                const QuadNum& x = acc[r][c];
                if (x.b != 0 || x.a.get_den() != 1)
                    throw std::logic_error("galois_twist: non-integral entry in the averaged matrix");
                b.at(r, c) = x.a.get_num();
            }
        if (!b.is_skew_symmetric())
            throw std::logic_error("galois_twist: averaged matrix lost skew-symmetry");
        bs.push_back(std::move(b));
    }
    return GroupPresentation(std::move(bs), "galois-sqrt(" + disc.get_str() + ")");
}

NonsingularSearch nonsingular_over_Q_search(const GroupPresentation& pres,
                                            unsigned height_bound)
{
    if (height_bound < 1)
        throw std::invalid_argument("nonsingular_over_Q_search: height bound must be >= 1");
    std::size_t m = pres.m(), n = pres.n();
    auto deficient = [&](const ZVec& wz) {
        IntMatrix r(n, m);
        for (std::size_t i = 0; i < n; ++i) {
            ZVec row = pres.matrix(i).transpose().apply(wz);
            for (std::size_t j = 0; j < m; ++j)
                r.at(i, j) = row[j];
        }
        return r.rank() < n;
    };
    // standard basis vectors first, then the full shell scan
    for (std::size_t i = 0; i < m; ++i) {
        ZVec wz(m, mpz_class(0));
        wz[i] = 1;
        if (deficient(wz))
            return {wz, 1};
    }
    // Ascending height; the first rank-deficient w found is primitive since a
    // scalar multiple would have been visited earlier.
    for (unsigned h = 1; h <= height_bound; ++h) {
        std::vector<long> w(m, -static_cast<long>(h));
        for (;;) {
            long maxabs = 0;
            for (long x : w)
                maxabs = std::max(maxabs, std::abs(x));
            bool on_shell = maxabs == static_cast<long>(h);
            bool lead_positive = false;
            for (long x : w) {
                if (x != 0) {
                    lead_positive = x > 0;
                    break;
                }
            }
            if (on_shell && lead_positive) {
                ZVec wz(m);
                for (std::size_t i = 0; i < m; ++i)
                    wz[i] = w[i];
                if (deficient(wz))
                    return {wz, h};
            }
            std::size_t i = m;
            bool advanced = false;
            while (i > 0) {
                --i;
                if (w[i] < static_cast<long>(h)) {
                    ++w[i];
                    for (std::size_t j = i + 1; j < m; ++j)
                        w[j] = -static_cast<long>(h);
                    advanced = true;
                    break;
                }
            }
            if (!advanced)
                break;
        }
    }
    return {std::nullopt, height_bound};
}

bool binary_form_has_rational_zero(const HomogeneousForm& g)
{
    if (g.nvars() != 2)
        throw std::invalid_argument("binary_form_has_rational_zero: binary forms only");
    if (g.is_zero())
        return true;
    unsigned deg = g.degree();
    if (g.coeff(Monomial{deg, 0}) == 0)
        return true; // projective zero at (1, 0)
    // rational roots of the dehomogenization, by the rational root test on
    // the primitive integer model
    UniPoly p = g.normalized().dehomogenize();
    ZVec c(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i)
        c[i] = p.coeff(i).get_num(); // normalized() cleared denominators
    if (c[0] == 0)
        return true; // root t = 0
    std::vector<mpz_class> num_divs, den_divs;
    mpz_class a0 = abs(c[0]), lead = abs(c.back());
    for (mpz_class d = 1; d * d <= a0; ++d)
        if (a0 % d == 0) {
            num_divs.push_back(d);
            num_divs.push_back(a0 / d);
        }
    for (mpz_class d = 1; d * d <= lead; ++d)
        if (lead % d == 0) {
            den_divs.push_back(d);
            den_divs.push_back(lead / d);
        }
    for (const auto& nu : num_divs)
        for (const auto& de : den_divs)
            for (int sign : {1, -1}) {
                mpq_class t(sign * nu, de);
                t.canonicalize();
                if (p(t) == 0)
                    return true;
            }
    return false;
}

std::optional<unsigned> psi_nonsingular(const GroupPresentation& pres)
{
    std::size_t m = pres.m(), n = pres.n();
    if (n == 1) {
        if (pres.matrix(0).rank() == m)
            return static_cast<unsigned>(m) + 1;
        return std::nullopt;
    }
    if (n == 2) {
        // rank of phi(w, .) drops for some rational w exactly when the
        // determinant form has a rational projective zero
        std::vector<std::size_t> all(m);
        for (std::size_t i = 0; i < m; ++i)
            all[i] = i;
        HomogeneousForm det = pres.pencil().matrix().minor_det(all, all);
        if (det.is_zero())
            return std::nullopt;
        if (!binary_form_has_rational_zero(det))
            return static_cast<unsigned>(m) + 1;
        return std::nullopt;
    }
    return std::nullopt; // no certification route implemented beyond n = 2
}

} // namespace nilrf
