#include "nilrf/forms.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace nilrf {

void HomogeneousForm::insert(Monomial m, const mpq_class& c)
{
    if (c == 0)
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

HomogeneousForm HomogeneousForm::monomial(std::size_t nvars, Monomial exp,
                                          const mpq_class& coeff)
{
    unsigned deg = 0;
    if (exp.size() != nvars)
        throw std::invalid_argument("HomogeneousForm::monomial: exponent size");
    for (unsigned e : exp)
        deg += e;
    HomogeneousForm f(nvars, deg);
    f.insert(std::move(exp), coeff);
    return f;
}

HomogeneousForm HomogeneousForm::linear(const QVec& coeffs)
{
    HomogeneousForm f(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Monomial m(coeffs.size(), 0);
        m[i] = 1;
        f.insert(std::move(m), coeffs[i]);
    }
    return f;
}

HomogeneousForm HomogeneousForm::linear(const ZVec& coeffs)
{
    QVec q(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        q[i] = coeffs[i];
    return linear(q);
}

mpq_class HomogeneousForm::coeff(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

HomogeneousForm HomogeneousForm::operator+(const HomogeneousForm& o) const
{
    if (nvars_ != o.nvars_ || degree_ != o.degree_)
        throw std::invalid_argument("HomogeneousForm: shape mismatch in sum");
    HomogeneousForm r = *this;
    for (const auto& [m, c] : o.terms_)
        r.insert(m, c);
    return r;
}

HomogeneousForm HomogeneousForm::operator-(const HomogeneousForm& o) const
{
    if (nvars_ != o.nvars_ || degree_ != o.degree_)
        throw std::invalid_argument("HomogeneousForm: shape mismatch in difference");
    HomogeneousForm r = *this;
    for (const auto& [m, c] : o.terms_)
        r.insert(m, mpq_class(-c));
    return r;
}

HomogeneousForm HomogeneousForm::operator*(const HomogeneousForm& o) const
{
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("HomogeneousForm: nvars mismatch in product");
    HomogeneousForm r(nvars_, degree_ + o.degree_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i)
                m[i] = m1[i] + m2[i];
            r.insert(std::move(m), mpq_class(c1 * c2));
        }
    return r;
}

HomogeneousForm HomogeneousForm::scaled(const mpq_class& c) const
{
    HomogeneousForm r(nvars_, degree_);
    if (c == 0)
        return r;
    for (const auto& [m, x] : terms_)
        r.terms_.emplace(m, mpq_class(x * c));
    return r;
}

HomogeneousForm HomogeneousForm::pow(unsigned e) const
{
    HomogeneousForm r = HomogeneousForm::monomial(nvars_, Monomial(nvars_, 0), 1);
    for (unsigned i = 0; i < e; ++i)
        r = r * *this;
    return r;
}

mpq_class HomogeneousForm::eval(const QVec& point) const
{
    if (point.size() != nvars_)
        throw std::invalid_argument("HomogeneousForm::eval: dimension mismatch");
    mpq_class acc = 0;
    for (const auto& [m, c] : terms_) {
        mpq_class t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m[i]; ++e)
                t *= point[i];
        acc += t;
    }
    return acc;
}

mpq_class HomogeneousForm::eval(const ZVec& point) const
{
    QVec q(point.size());
    for (std::size_t i = 0; i < point.size(); ++i)
        q[i] = point[i];
    return eval(q);
}

HomogeneousForm
HomogeneousForm::substitute_linear(const std::vector<QVec>& images,
                                   std::size_t nvars_out) const
{
    if (images.size() != nvars_)
        throw std::invalid_argument("substitute_linear: one image per variable required");
    std::vector<HomogeneousForm> lin;
    lin.reserve(nvars_);
    for (const auto& im : images) {
        if (im.size() != nvars_out)
            throw std::invalid_argument("substitute_linear: image dimension mismatch");
        lin.push_back(HomogeneousForm::linear(im));
    }
    HomogeneousForm r(nvars_out, degree_);
    for (const auto& [m, c] : terms_) {
        HomogeneousForm t = HomogeneousForm::monomial(nvars_out, Monomial(nvars_out, 0), c);
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m[i]; ++e)
                t = t * lin[i];
        r = r + t;
    }
    return r;
}

mpq_class HomogeneousForm::normalization_scale() const
{
    if (is_zero())
        throw std::invalid_argument("normalization_scale: zero form");
    // s such that s*f has coprime integer coefficients and positive
    // coefficient on the lex-greatest monomial.
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        num_gcd = gcd(num_gcd, c.get_num());
        den_lcm = lcm(den_lcm, c.get_den());
    }
    mpq_class s(den_lcm, num_gcd);
    s.canonicalize();
    const mpq_class& lead = terms_.rbegin()->second;
    if (lead * s < 0)
        s = -s;
    return s;
}

HomogeneousForm HomogeneousForm::normalized() const
{
    if (is_zero())
        return *this;
    return scaled(normalization_scale());
}

UniPoly HomogeneousForm::dehomogenize() const
{
    if (nvars_ != 2)
        throw std::invalid_argument("dehomogenize: binary forms only");
    QVec c(degree_ + 1, mpq_class(0));
    for (const auto& [m, x] : terms_)
        c[m[0]] = x;
    return UniPoly(std::move(c));
}

unsigned HomogeneousForm::y_valuation() const
{
    if (nvars_ != 2)
        throw std::invalid_argument("y_valuation: binary forms only");
    if (is_zero())
        throw std::invalid_argument("y_valuation: zero form");
    unsigned v = degree_;
    for (const auto& [m, x] : terms_)
        v = std::min(v, m[1]);
    return v;
}

HomogeneousForm HomogeneousForm::homogenize_binary(const UniPoly& g, unsigned extra_y)
{
    if (g.is_zero())
        throw std::invalid_argument("homogenize_binary: zero polynomial");
    unsigned d = static_cast<unsigned>(g.degree());
    HomogeneousForm f(2, d + extra_y);
    for (unsigned i = 0; i <= d; ++i)
        f.insert(Monomial{i, d - i + extra_y}, g.coeff(i));
    return f;
}

std::string HomogeneousForm::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    // print lex-greatest monomial first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        mpq_class c = it->second;
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
        bool has_var = false;
        for (unsigned e : it->first)
            if (e)
                has_var = true;
        if (c != 1 || !has_var)
            os << c.get_str();
        bool printed = (c != 1 || !has_var);
        for (std::size_t i = 0; i < nvars_; ++i) {
            unsigned e = it->first[i];
            if (!e)
                continue;
            if (printed)
                os << "*";
            os << "x" << (i + 1);
            if (e > 1)
                os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

bool operator<(const HomogeneousForm& a, const HomogeneousForm& b)
{
    if (a.nvars() != b.nvars())
        return a.nvars() < b.nvars();
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    auto ia = a.terms().begin(), ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first)
            return ia->first < ib->first;
        int c = cmp(ia->second, ib->second);
        if (c != 0)
            return c < 0;
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

bool canonical_form_less(const HomogeneousForm& a, const HomogeneousForm& b)
{
    if (a.term_count() != b.term_count())
        return a.term_count() < b.term_count();
    // lex-greater leading monomial first
    auto ia = a.terms().rbegin(), ib = b.terms().rbegin();
    for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
        if (ia->first != ib->first)
            return ia->first > ib->first;
        if (ia->second != ib->second)
            return ia->second < ib->second;
    }
    return false;
}

SymbolicMatrix::SymbolicMatrix(std::vector<IntMatrix> coefficient_matrices)
    : coef_(std::move(coefficient_matrices))
{
    if (coef_.empty())
        throw std::invalid_argument("SymbolicMatrix: at least one variable required");
    for (const auto& m : coef_)
        if (m.rows() != coef_[0].rows() || m.cols() != coef_[0].cols())
            throw std::invalid_argument("SymbolicMatrix: coefficient shapes differ");
}

void SymbolicMatrix::set_entry(std::size_t i, std::size_t j, const ZVec& linear_coeffs)
{
    if (linear_coeffs.size() != nvars())
        throw std::invalid_argument("SymbolicMatrix::set_entry: wrong coefficient count");
    for (std::size_t v = 0; v < nvars(); ++v)
        coef_[v].at(i, j) = linear_coeffs[v];
}

HomogeneousForm SymbolicMatrix::entry(std::size_t i, std::size_t j) const
{
    ZVec c(nvars());
    for (std::size_t v = 0; v < nvars(); ++v)
        c[v] = coef_[v].at(i, j);
    return HomogeneousForm::linear(c);
}

IntMatrix SymbolicMatrix::evaluate(const ZVec& a) const
{
    if (a.size() != nvars())
        throw std::invalid_argument("SymbolicMatrix::evaluate: dimension mismatch");
    IntMatrix r(rows(), cols());
    for (std::size_t v = 0; v < nvars(); ++v)
        if (a[v] != 0)
            r = r + coef_[v].scaled(a[v]);
    return r;
}

HomogeneousForm SymbolicMatrix::minor_det(const std::vector<std::size_t>& rows,
                                          const std::vector<std::size_t>& cols) const
{
    std::size_t d = rows.size();
    if (cols.size() != d)
        throw std::invalid_argument("minor_det: row/col count mismatch");
    if (d == 0)
        return HomogeneousForm::monomial(nvars(), Monomial(nvars(), 0), 1);
    // Laplace expansion along rows with memoization on the column subset.
    std::unordered_map<std::uint64_t, HomogeneousForm> memo;
    if (d > 63)
        throw std::invalid_argument("minor_det: dimension too large");
    std::function<HomogeneousForm(std::size_t, std::uint64_t)> rec =
        [&](std::size_t level, std::uint64_t colmask) -> HomogeneousForm {
        if (level == d)
            return HomogeneousForm::monomial(nvars(), Monomial(nvars(), 0), 1);
        auto it = memo.find(colmask);
        if (it != memo.end())
            return it->second;
        HomogeneousForm acc(nvars(), static_cast<unsigned>(d - level));
        int sign = 1;
        for (std::size_t j = 0; j < d; ++j) {
            if (!(colmask & (std::uint64_t(1) << j)))
                continue;
            HomogeneousForm e = entry(rows[level], cols[j]);
            if (!e.is_zero()) {
                HomogeneousForm sub = rec(level + 1, colmask & ~(std::uint64_t(1) << j));
                HomogeneousForm term = e * sub;
                acc = (sign > 0) ? acc + term : acc - term;
            }
            sign = -sign;
        }
        memo.emplace(colmask, acc);
        return acc;
    };
    std::uint64_t full = (d == 64) ? ~std::uint64_t(0)
                                   : ((std::uint64_t(1) << d) - 1);
    return rec(0, full);
}

SymbolicPencil::SymbolicPencil(std::vector<IntMatrix> coefficient_matrices)
    : mat_(std::move(coefficient_matrices))
{
    if (mat_.rows() != mat_.cols())
        throw std::invalid_argument("SymbolicPencil: matrices must be square");
    for (std::size_t v = 0; v < mat_.nvars(); ++v)
        if (!mat_.coefficient(v).is_skew_symmetric())
            throw std::invalid_argument("SymbolicPencil: coefficient matrices must be skew-symmetric");
}

SymbolicPencil SymbolicPencil::variable_change(const IntMatrix& P) const
{
    std::size_t n = nvars();
    if (P.rows() != n || P.cols() != n)
        throw std::invalid_argument("variable_change: P must be nvars x nvars");
    std::vector<IntMatrix> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix acc(size(), size());
        for (std::size_t i = 0; i < n; ++i)
            if (P.at(j, i) != 0)
                acc = acc + mat_.coefficient(i).scaled(P.at(j, i));
        out.push_back(std::move(acc));
    }
    return SymbolicPencil(std::move(out));
}

SymbolicPencil SymbolicPencil::basis_change(const IntMatrix& Q) const
{
    std::vector<IntMatrix> out;
    out.reserve(nvars());
    IntMatrix qt = Q.transpose();
    for (std::size_t i = 0; i < nvars(); ++i)
        out.push_back(qt * mat_.coefficient(i) * Q);
    return SymbolicPencil(std::move(out));
}

namespace {

// Visit all size-d index subsets of {0, ..., n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t d, F&& visit)
{
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i)
        idx[i] = i;
    for (;;) {
        visit(const_cast<const std::vector<std::size_t>&>(idx));
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - d) {
                ++idx[i];
                for (std::size_t j = i + 1; j < d; ++j)
                    idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0)
                return;
        }
        if (d == 0)
            return;
    }
}

} // namespace

std::vector<HomogeneousForm> minor_ideal_generators(const SymbolicMatrix& M,
                                                    std::size_t d)
{
    if (d < 1 || d > std::min(M.rows(), M.cols()))
        throw std::invalid_argument("minor_ideal_generators: d out of range");
    std::vector<HomogeneousForm> gens;
    for_each_subset(M.rows(), d, [&](const std::vector<std::size_t>& rows) {
        for_each_subset(M.cols(), d, [&](const std::vector<std::size_t>& cols) {
            HomogeneousForm f = M.minor_det(rows, cols);
            if (!f.is_zero())
                gens.push_back(f.normalized());
        });
    });
    std::sort(gens.begin(), gens.end(), canonical_form_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

std::vector<HomogeneousForm> minor_ideal_generators(const SymbolicPencil& M,
                                                    std::size_t d)
{
    return minor_ideal_generators(M.matrix(), d);
}

HomogeneousForm gcd_minors_binary(const SymbolicPencil& M, std::size_t d)
{
    if (M.nvars() != 2)
        throw std::invalid_argument("gcd_minors_binary: two-variable pencils only");
    if (d < 1 || d > M.size())
        throw std::invalid_argument("gcd_minors_binary: d out of range");
    std::size_t m = M.size();
    const IntMatrix& a1 = M.coefficient(0);
    const IntMatrix& a2 = M.coefficient(1);

    auto pencil_at = [&](const IntMatrix& con, const IntMatrix& lin) {
        std::vector<std::vector<UniPoly>> grid(m, std::vector<UniPoly>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                grid[i][j] = UniPoly(QVec{mpq_class(con.at(i, j)),
                                          mpq_class(lin.at(i, j))});
        return grid;
    };

    // gcd of dehomogenized minors = product of the first d invariant factors
    // of t A1 + A2 over Q[t].
    auto inv_t = poly_invariant_factors(pencil_at(a2, a1));
    UniPoly delta = UniPoly::constant(1);
    for (std::size_t i = 0; i < d; ++i) {
        if (inv_t[i].is_zero())
            return HomogeneousForm(2, static_cast<unsigned>(d)); // all minors vanish
        delta = delta * inv_t[i];
    }

    // The dropped power of x2 is the order at s = 0 of the same divisor for
    // A1 + s A2.
    auto inv_s = poly_invariant_factors(pencil_at(a1, a2));
    unsigned vmin = 0;
    for (std::size_t i = 0; i < d; ++i)
        vmin += inv_s[i].valuation_at_zero();

    return HomogeneousForm::homogenize_binary(delta, vmin).normalized();
}

std::optional<LinearPower> rational_linear_factor(const HomogeneousForm& g)
{
    if (g.nvars() != 2)
        throw std::invalid_argument("rational_linear_factor: binary forms only");
    if (g.is_zero())
        throw std::invalid_argument("rational_linear_factor: zero form");
    unsigned d = g.degree();
    if (d == 0)
        return std::nullopt;

    if (g.term_count() == 1) {
        const auto& [m, c] = *g.terms().begin();
        if (m[0] == d)
            return LinearPower{{1, 0}, d};
        if (m[1] == d)
            return LinearPower{{0, 1}, d};
        return std::nullopt; // x^a y^b with a, b > 0 has two distinct factors
    }

    // A pure power of v1 x1 + v2 x2 with both entries nonzero has every
    // monomial present; in particular valuations are zero.
    Monomial top{d, 0}, bot{0, d};
    mpq_class ctop = g.coeff(top);
    mpq_class cnext = g.coeff(Monomial{d - 1, 1});
    if (ctop == 0 || cnext == 0)
        return std::nullopt;
    // If g = c (x - r y)^d then cnext/ctop = -d r.
    mpq_class r = -cnext / (ctop * d);
    mpz_class num = r.get_num(), den = r.get_den(); // den > 0
    ZVec v{den, mpz_class(-num)};
    mpq_class c = ctop / mpq_class(pow(den, d));
    HomogeneousForm probe = HomogeneousForm::linear(v).pow(d).scaled(c);
    if (probe == g)
        return LinearPower{std::move(v), d};
    return std::nullopt;
}

FormSpan::FormSpan(std::size_t nvars, unsigned degree)
    : nvars_(nvars), degree_(degree), monomials_(monomials_of_degree(nvars, degree))
{
    for (std::size_t i = 0; i < monomials_.size(); ++i)
        monomial_index_.emplace(monomials_[i], i);
}

QVec FormSpan::densify(const HomogeneousForm& f) const
{
    if (f.nvars() != nvars_ || f.degree() != degree_)
        throw std::invalid_argument("FormSpan: form shape mismatch");
    QVec v(monomials_.size(), mpq_class(0));
    for (const auto& [m, c] : f.terms())
        v[monomial_index_.at(m)] = c;
    return v;
}

std::size_t FormSpan::add(const HomogeneousForm& f)
{
    std::size_t idx = n_added_++;
    QVec vec = densify(f);
    std::map<std::size_t, mpq_class> combo{{idx, mpq_class(1)}};

    for (const auto& row : rows_) {
        const mpq_class& c = vec[row.lead];
        if (c == 0)
            continue;
        mpq_class f2 = c; // row.vec[lead] == 1
        for (std::size_t j = 0; j < vec.size(); ++j)
            if (row.vec[j] != 0)
                vec[j] -= f2 * row.vec[j];
        for (const auto& [k, rc] : row.combo) {
            auto it = combo.find(k);
            if (it == combo.end())
                combo.emplace(k, mpq_class(-f2 * rc));
            else {
                it->second -= f2 * rc;
                if (it->second == 0)
                    combo.erase(it);
            }
        }
    }
    std::size_t lead = vec.size();
    for (std::size_t j = 0; j < vec.size(); ++j)
        if (vec[j] != 0) {
            lead = j;
            break;
        }
    if (lead == vec.size()) {
        grew_ = false;
        return idx;
    }
    mpq_class inv = 1 / vec[lead];
    for (auto& x : vec)
        x *= inv;
    for (auto& [k, rc] : combo)
        rc *= inv;
    // Keep existing rows reduced at the new lead so reduction stays a single
    // forward pass.
    for (auto& row : rows_) {
        const mpq_class c = row.vec[lead];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < vec.size(); ++j)
            if (vec[j] != 0)
                row.vec[j] -= c * vec[j];
        for (const auto& [k, rc] : combo) {
            auto it = row.combo.find(k);
            if (it == row.combo.end())
                row.combo.emplace(k, mpq_class(-c * rc));
            else {
                it->second -= c * rc;
                if (it->second == 0)
                    row.combo.erase(it);
            }
        }
    }
    Row row{std::move(vec), std::move(combo), lead};
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), row,
                                [](const Row& a, const Row& b) { return a.lead < b.lead; });
    rows_.insert(pos, std::move(row));
    grew_ = true;
    return idx;
}

std::optional<std::map<std::size_t, mpq_class>>
FormSpan::express(const HomogeneousForm& target) const
{
    QVec vec = densify(target);
    std::map<std::size_t, mpq_class> combo;
    for (const auto& row : rows_) {
        const mpq_class c = vec[row.lead];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < vec.size(); ++j)
            if (row.vec[j] != 0)
                vec[j] -= c * row.vec[j];
        for (const auto& [k, rc] : row.combo) {
            auto it = combo.find(k);
            if (it == combo.end())
                combo.emplace(k, mpq_class(c * rc));
            else {
                it->second += c * rc;
                if (it->second == 0)
                    combo.erase(it);
            }
        }
    }
    for (const auto& x : vec)
        if (x != 0)
            return std::nullopt;
    return combo;
}

bool FormSpan::contains(const HomogeneousForm& f) const
{
    QVec vec = densify(f);
    for (const auto& row : rows_) {
        const mpq_class c = vec[row.lead];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < vec.size(); ++j)
            if (row.vec[j] != 0)
                vec[j] -= c * row.vec[j];
    }
    for (const auto& x : vec)
        if (x != 0)
            return false;
    return true;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree)
{
    std::vector<Monomial> out;
    Monomial cur(nvars, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos + 1 == nvars) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int e = static_cast<int>(left); e >= 0; --e) {
            cur[pos] = static_cast<unsigned>(e);
            rec(pos + 1, left - static_cast<unsigned>(e));
        }
    };
    if (nvars == 0)
        throw std::invalid_argument("monomials_of_degree: nvars must be positive");
    rec(0, degree);
    return out;
}

} // namespace nilrf
