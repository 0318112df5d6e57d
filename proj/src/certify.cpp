#include "nilrf/certify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace nilrf {

namespace {

std::size_t binom(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        // desk scale; saturate rather than overflow
        if (r > (std::size_t(1) << 40))
            return std::size_t(1) << 40;
        r = r * (n - i) / (i + 1);
    }
    return r;
}

template <typename F>
void for_each_subset(std::size_t n, std::size_t d, F&& visit)
{
    if (d > n)
        return;
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i)
        idx[i] = i;
    for (;;) {
        visit(const_cast<const std::vector<std::size_t>&>(idx));
        std::size_t i = d;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - d) {
                ++idx[i];
                for (std::size_t j = i + 1; j < d; ++j)
                    idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            return;
    }
}

HomogeneousForm target_power(const ZVec& v, unsigned power)
{
    return HomogeneousForm::linear(v).pow(power);
}

bool combo_integral(const QVec& coeffs)
{
    for (const auto& c : coeffs)
        if (c.get_den() != 1)
            return false;
    return true;
}

// ---- dense route -----------------------------------------------------

struct DedupGen {
    HomogeneousForm normalized;
    HomogeneousForm raw; // actual minor at `ref`
    MinorRef ref;
};

std::vector<DedupGen> dense_generators(const SymbolicMatrix& M, std::size_t d)
{
    std::vector<DedupGen> gens;
    std::map<HomogeneousForm, std::size_t> seen; // normalized -> index
    for_each_subset(M.rows(), d, [&](const std::vector<std::size_t>& rows) {
        for_each_subset(M.cols(), d, [&](const std::vector<std::size_t>& cols) {
            HomogeneousForm f = M.minor_det(rows, cols);
            if (f.is_zero())
                return;
            HomogeneousForm norm = f.normalized();
            if (seen.count(norm))
                return;
            seen.emplace(norm, gens.size());
            gens.push_back({std::move(norm), std::move(f), {rows, cols}});
        });
    });
    std::sort(gens.begin(), gens.end(), [](const DedupGen& a, const DedupGen& b) {
        return canonical_form_less(a.normalized, b.normalized);
    });
    return gens;
}

// Span of the degree-`power` slice built once; several targets can then be
// expressed against it.
class DenseSlice {
public:
    DenseSlice(const SymbolicPencil& M, std::size_t d, unsigned power)
        : gens_(dense_generators(M.matrix(), d)),
          nvars_(M.nvars()),
          d_(d),
          power_(power),
          span_(M.nvars(), power)
    {
        if (power_ != d_)
            mults_ = monomials_of_degree(nvars_, power_ - static_cast<unsigned>(d_));
        for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
            if (power_ == d_) {
                span_.add(gens_[gi].normalized);
                cols_.push_back({gi, static_cast<std::size_t>(-1)});
            } else {
                for (std::size_t mi = 0; mi < mults_.size(); ++mi) {
                    span_.add(gens_[gi].normalized *
                              HomogeneousForm::monomial(nvars_, mults_[mi], 1));
                    cols_.push_back({gi, mi});
                }
            }
        }
    }

    std::optional<MembershipCertificate> express(const ZVec& v) const
    {
        auto combo = span_.express(target_power(v, power_));
        if (!combo)
            return std::nullopt;
        MembershipCertificate cert;
        cert.v = v;
        cert.d = static_cast<unsigned>(d_);
        cert.power = power_;
        QVec lambda(cols_.size(), mpq_class(0));
        for (const auto& [idx, c] : *combo)
            lambda[idx] = c;
        for (std::size_t idx = 0; idx < cols_.size(); ++idx) {
            if (lambda[idx] == 0)
                continue;
            const DedupGen& g = gens_[cols_[idx].gen];
            // combination over normalized forms -> coefficients over raw minors
            mpq_class scale = g.raw.normalization_scale();
            cert.refs.push_back(g.ref);
            cert.coeffs.push_back(mpq_class(lambda[idx] * scale));
            if (power_ != d_)
                cert.multipliers.push_back(mults_[cols_[idx].mult]);
        }
        if (power_ == d_)
            cert.lambda_canonical = std::move(lambda);
        cert.lambda_integral =
            combo_integral(cert.lambda_canonical ? *cert.lambda_canonical : cert.coeffs);
        return cert;
    }

private:
    std::vector<DedupGen> gens_;
    std::size_t nvars_;
    std::size_t d_;
    unsigned power_;
    FormSpan span_;
    std::vector<Monomial> mults_;
    struct Col {
        std::size_t gen;
        std::size_t mult;
    };
    std::vector<Col> cols_;
};

std::optional<MembershipCertificate>
membership_dense(const ZVec& v, std::size_t d, unsigned power, const SymbolicPencil& M)
{
    return DenseSlice(M, d, power).express(v);
}

// ---- component route --------------------------------------------------

std::vector<std::vector<std::size_t>> support_components(const SymbolicMatrix& M)
{
    std::size_t m = M.rows();
    std::vector<std::size_t> parent(m);
    for (std::size_t i = 0; i < m; ++i)
        parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t var = 0; var < M.nvars(); ++var)
                if (M.entry_coeff(i, j, var) != 0) {
                    parent[find(i)] = find(j);
                    break;
                }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < m; ++i)
        groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups)
        out.push_back(std::move(members)); // keyed by min member, so ordered
    return out;
}

int sorted_merge_sign(const std::vector<std::vector<std::size_t>>& parts,
                      std::vector<std::size_t>& merged)
{
    merged.clear();
    for (const auto& p : parts)
        merged.insert(merged.end(), p.begin(), p.end());
    long inversions = 0;
    for (std::size_t i = 0; i < merged.size(); ++i)
        for (std::size_t j = i + 1; j < merged.size(); ++j)
            if (merged[i] > merged[j])
                ++inversions;
    std::sort(merged.begin(), merged.end());
    return inversions % 2 == 0 ? 1 : -1;
}

struct LocalMinor {
    std::vector<std::size_t> rows, cols; // global indices, sorted
    HomogeneousForm form;                // exact determinant
};

std::optional<MembershipCertificate>
membership_lazy(const ZVec& v, std::size_t d, const SymbolicPencil& M,
                const CertifyOptions& opts)
{
    const SymbolicMatrix& mat = M.matrix();
    std::size_t nvars = M.nvars();
    auto comps = support_components(mat);
    std::size_t ncomp = comps.size();

    // distinct minors per component and size
    std::vector<std::vector<std::vector<LocalMinor>>> table(ncomp);
    for (std::size_t c = 0; c < ncomp; ++c) {
        const auto& verts = comps[c];
        std::size_t s = verts.size();
        std::size_t top = std::min(s, d);
        table[c].resize(top + 1);
        table[c][0].push_back({{}, {}, HomogeneousForm::monomial(nvars, Monomial(nvars, 0), 1)});
        for (std::size_t j = 1; j <= top; ++j) {
            std::size_t count = binom(s, j) * binom(s, j);
            if (count > opts.component_budget)
                throw resource_error("membership: component minor enumeration over budget");
            std::set<HomogeneousForm> seen;
            for_each_subset(s, j, [&](const std::vector<std::size_t>& ri) {
                std::vector<std::size_t> rows(j);
                for (std::size_t t = 0; t < j; ++t)
                    rows[t] = verts[ri[t]];
                for_each_subset(s, j, [&](const std::vector<std::size_t>& ci) {
                    std::vector<std::size_t> cols(j);
                    for (std::size_t t = 0; t < j; ++t)
                        cols[t] = verts[ci[t]];
                    HomogeneousForm f = mat.minor_det(rows, cols);
                    if (f.is_zero())
                        return;
                    if (!seen.insert(f).second)
                        return;
                    table[c][j].push_back({rows, cols, std::move(f)});
                });
            });
        }
    }

    HomogeneousForm target = target_power(v, static_cast<unsigned>(d));
    FormSpan span(nvars, static_cast<unsigned>(d));
    std::size_t full_dim = span.monomials().size();
    std::vector<std::pair<MinorRef, HomogeneousForm>> added; // by span index
    std::set<HomogeneousForm> seen_products;
    std::size_t leaves = 0;
    std::optional<std::map<std::size_t, mpq_class>> solution;

    // capacity suffix for pruning
    std::vector<std::size_t> cap(ncomp + 1, 0);
    for (std::size_t c = ncomp; c-- > 0;)
        cap[c] = cap[c + 1] + std::min(comps[c].size(), d);

    std::vector<const LocalMinor*> choice(ncomp);
    std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t c,
                                                            std::size_t left) -> bool {
        if (c == ncomp) {
            if (left != 0)
                return false;
            if (++leaves > opts.lazy_budget)
                throw resource_error("membership: product enumeration over budget");
            std::vector<std::vector<std::size_t>> rparts, cparts;
            HomogeneousForm prod = HomogeneousForm::monomial(nvars, Monomial(nvars, 0), 1);
            for (std::size_t t = 0; t < ncomp; ++t) {
                if (choice[t]->rows.empty())
                    continue;
                rparts.push_back(choice[t]->rows);
                cparts.push_back(choice[t]->cols);
                prod = prod * choice[t]->form;
            }
            std::vector<std::size_t> rows, cols;
            int sign = sorted_merge_sign(rparts, rows) * sorted_merge_sign(cparts, cols);
            HomogeneousForm actual = sign > 0 ? prod : prod.scaled(-1);
            if (!seen_products.insert(actual).second)
                return false;
            std::size_t idx = span.add(actual);
            (void)idx;
            added.emplace_back(MinorRef{rows, cols}, actual);
            if (span.grew_on_last_add()) {
                auto combo = span.express(target);
                if (combo) {
                    solution = std::move(combo);
                    return true;
                }
                if (span.dim() == full_dim) {
                    // the slice is everything; target must be expressible
                    solution = span.express(target);
                    return solution.has_value();
                }
            }
            return false;
        }
        if (left > cap[c])
            return false;
        std::size_t top = std::min(comps[c].size(), d);
        for (std::size_t j = std::min(top, left) + 1; j-- > 0;) {
            for (const auto& lm : table[c][j]) {
                choice[c] = &lm;
                if (dfs(c + 1, left - j))
                    return true;
            }
        }
        return false;
    };
    dfs(0, d);

    if (!solution)
        return std::nullopt;
    MembershipCertificate cert;
    cert.v = v;
    cert.d = static_cast<unsigned>(d);
    cert.power = static_cast<unsigned>(d);
    for (const auto& [idx, c] : *solution) {
        cert.refs.push_back(added[idx].first);
        cert.coeffs.push_back(c);
    }
    cert.lambda_integral = combo_integral(cert.coeffs);
    return cert;
}

} // namespace

std::optional<MembershipCertificate> membership(const ZVec& v, std::size_t d,
                                                const SymbolicPencil& M,
                                                const CertifyOptions& opts)
{
    if (v.size() != M.nvars())
        throw std::invalid_argument("membership: v has wrong dimension");
    if (is_zero(v))
        throw std::invalid_argument("membership: v must be nonzero");
    if (d < 1 || d > M.size())
        throw std::invalid_argument("membership: d out of range");
    std::size_t count = binom(M.size(), d) * binom(M.size(), d);
    if (count <= opts.dense_budget)
        return membership_dense(v, d, static_cast<unsigned>(d), M);
    return membership_lazy(v, d, M, opts);
}

std::optional<MembershipCertificate> membership_power(const ZVec& v, std::size_t d,
                                                      unsigned k,
                                                      const SymbolicPencil& M,
                                                      const CertifyOptions& opts)
{
    if (k < d)
        throw std::invalid_argument("membership_power: power below ideal degree");
    if (v.size() != M.nvars() || is_zero(v))
        throw std::invalid_argument("membership_power: bad v");
    if (d < 1 || d > M.size())
        throw std::invalid_argument("membership_power: d out of range");
    std::size_t count = binom(M.size(), d) * binom(M.size(), d);
    if (count > opts.dense_budget)
        throw resource_error("membership_power: generator enumeration over budget");
    return membership_dense(v, d, k, M);
}

bool verify_membership(const SymbolicPencil& M, const MembershipCertificate& cert)
{
    if (cert.refs.size() != cert.coeffs.size())
        return false;
    if (!cert.multipliers.empty() && cert.multipliers.size() != cert.refs.size())
        return false;
    HomogeneousForm acc(M.nvars(), cert.power);
    for (std::size_t i = 0; i < cert.refs.size(); ++i) {
        HomogeneousForm minor = M.matrix().minor_det(cert.refs[i].rows, cert.refs[i].cols);
        HomogeneousForm term = minor.scaled(cert.coeffs[i]);
        if (!cert.multipliers.empty())
            term = term * HomogeneousForm::monomial(M.nvars(), cert.multipliers[i], 1);
        acc = acc + term;
    }
    return acc == target_power(cert.v, cert.power);
}

namespace {

std::vector<ZVec> candidate_vectors(const SymbolicPencil& M, std::size_t d,
                                    const CertifyOptions& opts)
{
    std::size_t n = M.nvars();
    std::vector<ZVec> out;
    std::set<ZVec> seen;
    auto push = [&](ZVec v) {
        if (seen.insert(v).second)
            out.push_back(std::move(v));
    };
    if (n == 1) {
        push({mpz_class(1)});
        return out;
    }
    if (n == 2) {
        HomogeneousForm g = gcd_minors_binary(M, d);
        if (!g.is_zero() && g.degree() > 0) {
            auto lp = rational_linear_factor(g);
            if (lp)
                push(lp->v);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        ZVec e(n, mpz_class(0));
        e[i] = 1;
        push(std::move(e));
    }
    // primitive vectors by height, first nonzero entry positive
    for (unsigned h = 1; h <= opts.height; ++h) {
        std::vector<long> digits(n, -static_cast<long>(h));
        for (;;) {
            long maxabs = 0;
            for (long x : digits)
                maxabs = std::max(maxabs, std::abs(x));
            if (maxabs == static_cast<long>(h)) {
                ZVec v(n);
                for (std::size_t i = 0; i < n; ++i)
                    v[i] = digits[i];
                bool zero = is_zero(v);
                if (!zero) {
                    for (auto& x : v) {
                        if (x == 0)
                            continue;
                        if (x < 0)
                            for (auto& y : v)
                                y = -y;
                        break;
                    }
                    if (gcd(v) == 1)
                        push(std::move(v));
                }
            }
            std::size_t i = n;
            bool advanced = false;
            while (i > 0) {
                --i;
                if (digits[i] < static_cast<long>(h)) {
                    ++digits[i];
                    for (std::size_t j = i + 1; j < n; ++j)
                        digits[j] = -static_cast<long>(h);
                    advanced = true;
                    break;
                }
            }
            if (!advanced)
                break;
        }
    }
    return out;
}

} // namespace

DeltaResult delta_search_below(const SymbolicPencil& M, std::size_t start_d,
                               const CertifyOptions& opts)
{
    for (std::size_t d = std::min(start_d, M.size()); d >= 1; --d) {
        auto candidates = candidate_vectors(M, d, opts);
        auto accept = [&](std::optional<MembershipCertificate> cert)
            -> std::optional<DeltaResult> {
            if (!cert)
                return std::nullopt;
            if (!verify_membership(M, *cert))
                throw std::logic_error("delta_search: certificate failed re-expansion");
            return DeltaResult{static_cast<unsigned>(d), std::move(cert)};
        };
        std::size_t count = binom(M.size(), d) * binom(M.size(), d);
        if (count <= opts.dense_budget) {
            DenseSlice slice(M, d, static_cast<unsigned>(d));
            for (const auto& v : candidates) {
                if (auto r = accept(slice.express(v)))
                    return std::move(*r);
            }
        } else {
            for (const auto& v : candidates) {
                if (auto r = accept(membership(v, d, M, opts)))
                    return std::move(*r);
            }
        }
    }
    return {0, std::nullopt};
}

DeltaResult delta_search(const SymbolicPencil& M, const CertifyOptions& opts)
{
    // The lower exponent can never exceed the (certified) upper cap, so the
    // descending scan starts there rather than at the matrix size.
    unsigned cap = upper_bound_d(M, opts).d_upper;
    DeltaResult r = delta_search_below(M, cap, opts);
    // A single matrix always certifies at its rank: the top nonzero minor is
    // a scalar times x^rank.
    if (M.nvars() == 1 && r.delta != M.coefficient(0).rank())
        throw std::logic_error("delta_search: rank certificate missed for a single matrix");
    return r;
}

std::optional<GoodPrimeSample> good_prime_basis(const SymbolicPencil& M,
                                                const mpz_class& p, unsigned d_target)
{
    if (!is_prime(p))
        throw std::invalid_argument("good_prime_basis: p is not prime");
    std::size_t n = M.nvars();
    if (!p.fits_ulong_p() || p.get_ui() >= (1UL << 20))
        throw std::invalid_argument("good_prime_basis: p too large for exhaustive scan");
    unsigned long pl = p.get_ui();

    GoodPrimeSample sample;
    sample.p = p;
    // greedy independent set of qualifying projective points
    std::vector<std::vector<std::uint64_t>> echelon; // mod-p row echelon
    auto try_add = [&](const ZVec& a) -> bool {
        std::vector<std::uint64_t> row(n);
        for (std::size_t i = 0; i < n; ++i) {
            mpz_class r = a[i] % p;
            if (r < 0)
                r += p;
            row[i] = r.get_ui();
        }
        for (const auto& er : echelon) {
            std::size_t lead = 0;
            while (lead < n && er[lead] == 0)
                ++lead;
            if (lead < n && row[lead] != 0) {
                // row -= row[lead]/er[lead] * er  (er[lead] normalized to 1)
                std::uint64_t f = row[lead];
                for (std::size_t t = lead; t < n; ++t)
                    row[t] = (row[t] + (pl - f % pl) * er[t]) % pl;
            }
        }
        std::size_t lead = 0;
        while (lead < n && row[lead] == 0)
            ++lead;
        if (lead == n)
            return false;
        // normalize lead to 1
        std::uint64_t inv = 1, base = row[lead], e = pl - 2;
        while (e) {
            if (e & 1)
                inv = (inv * base) % pl;
            base = (base * base) % pl;
            e >>= 1;
        }
        for (std::size_t t = lead; t < n; ++t)
            row[t] = (row[t] * inv) % pl;
        echelon.push_back(std::move(row));
        return true;
    };

    for (const auto& a : cyclic_projections(n, p, 1)) {
        std::size_t rank = rank_mod_p(M.evaluate(a), pl);
        if (rank > d_target)
            continue;
        if (try_add(a)) {
            sample.basis.push_back(a);
            sample.ranks.push_back(static_cast<unsigned>(rank));
            if (sample.basis.size() == n)
                return sample;
        }
    }
    return std::nullopt;
}

PrimeScan scan_good_primes(const SymbolicPencil& M, unsigned d_target,
                           unsigned prime_count, std::size_t point_budget)
{
    PrimeScan scan;
    mpz_class p = 2;
    for (unsigned i = 0; i < prime_count; ++i) {
        // projective point count (p^n - 1)/(p - 1)
        mpz_class points = 0, pw = 1;
        for (std::size_t t = 0; t < M.nvars(); ++t) {
            points += pw;
            pw *= p;
        }
        if (points > point_budget) {
            scan.skipped.push_back(p);
        } else if (good_prime_basis(M, p, d_target)) {
            scan.good.push_back(p);
        } else {
            scan.bad.push_back(p);
        }
        p = next_prime(p);
    }
    return scan;
}

UpperBoundReport upper_bound_d(const SymbolicPencil& M, const CertifyOptions& opts)
{
    UpperBoundReport rep;
    std::size_t n = M.nvars();
    std::size_t m = M.size();

    if (n == 1) {
        rep.method = UpperMethod::rank_n1;
        rep.d_upper = static_cast<unsigned>(M.coefficient(0).rank());
        rep.certified = true;
        return rep;
    }

    if (n == 2) {
        rep.method = UpperMethod::binary_gcd_n2;
        rep.certified = true;
        unsigned best = 0;
        std::optional<ZVec> hv;
        for (std::size_t d = 1; d <= m; ++d) {
            HomogeneousForm g = gcd_minors_binary(M, d);
            if (g.is_zero())
                break;
            if (g.degree() == 0) {
                best = static_cast<unsigned>(d);
                hv.reset(); // variety is the origin; no distinguished hyperplane
                continue;
            }
            auto lp = rational_linear_factor(g);
            if (!lp)
                break; // two or more distinct roots: no hyperplane contains them
            best = static_cast<unsigned>(d);
            hv = lp->v;
        }
        if (best % 2 != 0)
            throw std::logic_error("upper_bound_d: skew pencil produced an odd bound");
        rep.d_upper = best;
        rep.hyperplane_v = std::move(hv);
        return rep;
    }

    // n >= 3: refute "variety inside a hyperplane" with exact rational points
    // of low rank; the refutations certify the cap, tightness stays open.
    rep.method = UpperMethod::heuristic_interval;
    rep.certified = false;
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<long> small(-3, 3);
    std::vector<ZVec> pool;
    for (std::size_t i = 0; i < n; ++i) {
        ZVec e(n, mpz_class(0));
        e[i] = 1;
        pool.push_back(std::move(e));
    }
    for (unsigned t = 0; t < opts.refute_points; ++t) {
        ZVec a(n);
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = small(rng);
            if (a[i] != 0)
                zero = false;
        }
        if (!zero)
            pool.push_back(std::move(a));
    }
    auto refuted = [&](std::size_t d) {
        IntMatrix pts(pool.size(), n);
        std::size_t count = 0;
        for (const auto& a : pool) {
            if (M.evaluate(a).rank() >= d)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                pts.at(count, j) = a[j];
            ++count;
        }
        IntMatrix found(count, n);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < n; ++j)
                found.at(i, j) = pts.at(i, j);
        return found.rank() == n;
    };
    unsigned d_upper = 2;
    for (std::size_t d = m - (m % 2); d >= 2; d -= 2) {
        if (!refuted(d)) {
            d_upper = static_cast<unsigned>(d);
            break;
        }
    }
    rep.d_upper = d_upper;

    // certified floor through power membership
    for (std::size_t d = d_upper; d >= 2; d -= 2) {
        bool found = false;
        for (const auto& v : candidate_vectors(M, d, opts)) {
            for (unsigned k = static_cast<unsigned>(d); k <= d + 2 && !found; ++k) {
                auto cert = membership_power(v, d, k, M, opts);
                if (cert)
                    found = true;
            }
            if (found)
                break;
        }
        if (found) {
            rep.heuristic_floor = static_cast<unsigned>(d);
            break;
        }
    }
    return rep;
}

RFVerdict analyze(const GroupPresentation& pres, const CertifyOptions& opts)
{
    auto validation = pres.validate();
    if (!validation.ok) {
        std::string msg = "presentation rejected:";
        for (const auto& e : validation.errors)
            msg += " " + e + ";";
        throw validation_error(msg);
    }
    SymbolicPencil pencil = pres.pencil();

    UpperBoundReport ur = upper_bound_d(pencil, opts);
    DeltaResult dr = delta_search_below(pencil, ur.d_upper, opts);
    if (!dr.certificate)
        throw std::logic_error("analyze: no lower certificate found for a valid presentation");

    if (dr.delta > ur.d_upper)
        throw std::logic_error("analyze: lower exponent exceeded the upper bound");
    if (pres.n() <= 2 && dr.delta != ur.d_upper)
        throw std::logic_error("analyze: exactness guarantee failed for n <= 2");

    // scan a window of small primes for low-rank bases and keep the first
    // witnessing sample
    PrimeScan scan = scan_good_primes(pencil, ur.d_upper, opts.prime_scan);
    ur.good_primes_window = scan.good;
    if (!scan.good.empty())
        ur.good_prime_sample = good_prime_basis(pencil, scan.good.front(), ur.d_upper);

    RFVerdict verdict;
    verdict.delta = dr.delta;
    verdict.d_upper = ur.d_upper;
    verdict.exponent_interval = {dr.delta + 1, ur.d_upper + 1};
    verdict.tight = (dr.delta == ur.d_upper);
    verdict.lower_certificate = std::move(*dr.certificate);
    verdict.upper_report = std::move(ur);
    verdict.candidate_height = opts.height;
    return verdict;
}

} // namespace nilrf
