#include "nilrf/unipoly.hpp"

#include <algorithm>
#include <sstream>

namespace nilrf {

UniPoly UniPoly::operator+(const UniPoly& o) const
{
    QVec r(std::max(c_.size(), o.c_.size()), mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        r[i] += o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const
{
    QVec r(std::max(c_.size(), o.c_.size()), mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        r[i] -= o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const
{
    if (is_zero() || o.is_zero())
        return UniPoly();
    QVec r(c_.size() + o.c_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    }
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const mpq_class& c) const
{
    if (c == 0)
        return UniPoly();
    QVec r = c_;
    for (auto& x : r)
        x *= c;
    return UniPoly(std::move(r));
}

mpq_class UniPoly::operator()(const mpq_class& x) const
{
    mpq_class acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = acc * x + c_[i];
    return acc;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& num, const UniPoly& den)
{
    if (den.is_zero())
        throw std::invalid_argument("UniPoly::divmod: division by zero polynomial");
    QVec rem = num.c_;
    int dd = den.degree();
    if (num.degree() < dd)
        return {UniPoly(), num};
    QVec quot(num.degree() - dd + 1, mpq_class(0));
    for (int i = num.degree(); i >= dd; --i) {
        mpq_class f = rem[i] / den.c_[dd];
        if (f == 0)
            continue;
        quot[i - dd] = f;
        for (int j = 0; j <= dd; ++j)
            rem[i - dd + j] -= f * den.c_[j];
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b)
{
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UniPoly UniPoly::monic() const
{
    if (is_zero())
        return UniPoly();
    return scaled(mpq_class(1) / lead());
}

unsigned UniPoly::valuation_at_zero() const
{
    if (is_zero())
        throw std::invalid_argument("UniPoly::valuation_at_zero: zero polynomial");
    unsigned v = 0;
    while (c_[v] == 0)
        ++v;
    return v;
}

std::string UniPoly::to_string(const std::string& var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0)
            continue;
        mpq_class c = c_[i];
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
            c = abs(c);
        }
        if (i == 0 || c != 1)
            os << c.get_str();
        if (i > 0) {
            if (c != 1)
                os << "*";
            os << var;
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

mpq_class resultant(const UniPoly& q1, const UniPoly& q2)
{
    if (q1.is_zero() || q2.is_zero())
        throw std::invalid_argument("resultant: zero polynomial input");
    std::size_t n = q1.degree(), m = q2.degree();
    std::size_t size = n + m;
    if (size == 0)
        return 1; // both constant, no common root
    // column j < m: t^j * q1; column m + j: t^j * q2; row r = degree r.
    std::vector<QVec> s(size, QVec(size, mpq_class(0)));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i <= n; ++i)
            s[i + j][j] = q1.coeff(i);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= m; ++i)
            s[i + j][m + j] = q2.coeff(i);

    // Gaussian determinant over Q.
    mpq_class det = 1;
    for (std::size_t col = 0; col < size; ++col) {
        std::size_t piv = col;
        while (piv < size && s[piv][col] == 0)
            ++piv;
        if (piv == size)
            return 0;
        if (piv != col) {
            std::swap(s[piv], s[col]);
            det = -det;
        }
        det *= s[col][col];
        for (std::size_t i = col + 1; i < size; ++i) {
            if (s[i][col] == 0)
                continue;
            mpq_class f = s[i][col] / s[col][col];
            for (std::size_t j = col; j < size; ++j)
                s[i][j] -= f * s[col][j];
        }
    }
    return det;
}

namespace {

using PolyMat = std::vector<std::vector<UniPoly>>;

void poly_diagonalize(PolyMat& a)
{
    std::size_t r = a.size();
    std::size_t c = r ? a[0].size() : 0;
    std::size_t k = std::min(r, c);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            std::size_t pi = r, pj = c;
            int best = -1;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (a[i][j].is_zero())
                        continue;
                    if (best < 0 || a[i][j].degree() < best) {
                        best = a[i][j].degree();
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == r)
                return;
            std::swap(a[t], a[pi]);
            for (std::size_t i = 0; i < r; ++i)
                std::swap(a[i][t], a[i][pj]);

            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a[i][t].is_zero())
                    continue;
                UniPoly q = UniPoly::divmod(a[i][t], a[t][t]).first;
                if (!q.is_zero())
                    for (std::size_t j = t; j < c; ++j)
                        a[i][j] = a[i][j] - q * a[t][j];
                if (!a[i][t].is_zero())
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a[t][j].is_zero())
                    continue;
                UniPoly q = UniPoly::divmod(a[t][j], a[t][t]).first;
                if (!q.is_zero())
                    for (std::size_t i = t; i < r; ++i)
                        a[i][j] = a[i][j] - q * a[i][t];
                if (!a[t][j].is_zero())
                    clean = false;
            }
            if (clean)
                break;
        }
    }
}

} // namespace

std::vector<UniPoly> poly_invariant_factors(PolyMat a)
{
    std::size_t r = a.size();
    std::size_t c = r ? a[0].size() : 0;
    std::size_t k = std::min(r, c);

    for (int guard = 0;; ++guard) {
        if (guard > 4096)
            throw std::runtime_error("poly_invariant_factors: chain did not stabilize");
        poly_diagonalize(a);
        std::size_t bad = k;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            const UniPoly& x = a[i][i];
            const UniPoly& y = a[i + 1][i + 1];
            bool divides = x.is_zero() ? y.is_zero()
                                       : UniPoly::divmod(y, x).second.is_zero();
            if ((x.is_zero() && !y.is_zero()) || (!x.is_zero() && !divides)) {
                bad = i;
                break;
            }
        }
        if (bad == k)
            break;
        if (a[bad][bad].is_zero()) {
            std::swap(a[bad], a[bad + 1]);
            for (std::size_t i = 0; i < r; ++i)
                std::swap(a[i][bad], a[i][bad + 1]);
        } else {
            for (std::size_t i = 0; i < r; ++i)
                a[i][bad] = a[i][bad] + a[i][bad + 1];
        }
    }

    std::vector<UniPoly> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(a[i][i].monic());
    return out;
}

} // namespace nilrf
