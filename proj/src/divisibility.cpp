#include "nilrf/divisibility.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>

namespace nilrf {

namespace {

bool vanishes_mod(const ZVec& v, const mpz_class& modulus)
{
    for (const auto& x : v)
        if (x % modulus != 0)
            return false;
    return true;
}

mpz_class dot(const ZVec& a, const ZVec& b)
{
    mpz_class acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

// Last invariant factor of the stacked coefficient matrix; primes dividing it
// are exactly those mod which the defining matrices become linearly
// dependent (so some M_a can vanish mod p and ranks below 2 are possible).
mpz_class dependency_modulus(const GroupPresentation& pres)
{
    std::size_t m = pres.m(), n = pres.n();
    IntMatrix stacked(m * m, n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                stacked.at(i * m + j, l) = pres.matrix(l).at(i, j);
    auto s = snf(stacked);
    return s.diag.empty() ? mpz_class(0) : s.diag.back();
}

mpz_class candidate_value(const GroupPresentation& pres, const ZVec& a,
                          const mpz_class& p, unsigned k)
{
    IntMatrix ma = pres.pencil().evaluate(a);
    if (k == 1 && p.fits_ulong_p() && p.get_ui() < (1UL << 20)) {
        std::size_t r = rank_mod_p(ma, p.get_ui());
        return pow(p, static_cast<unsigned long>(r) + 1);
    }
    return image_size_mod(ma, p, k) * pow(p, k);
}

} // namespace

DivisibilityResult divisibility_central(const GroupPresentation& pres, const ZVec& v,
                                        const DivisibilityOptions& opts)
{
    std::size_t n = pres.n();
    if (v.size() != n)
        throw std::invalid_argument("divisibility_central: v has wrong dimension");
    if (is_zero(v))
        throw std::invalid_argument("divisibility_central: v must be nonzero (the identity has no separating quotient)");

    // Upper seed: smallest prime p0 with v nonzero mod p0, k = 1, best a.
    mpz_class g = gcd(v);
    mpz_class p0 = 2;
    while (g % p0 == 0)
        p0 = next_prime(p0);
    mpz_class seed_bound = 0;
    {
        mpz_class best_seed = 0;
        for (const auto& a : cyclic_projections(n, p0, 1)) {
            if (dot(a, v) % p0 == 0)
                continue;
            mpz_class val = candidate_value(pres, a, p0, 1);
            if (best_seed == 0 || val < best_seed)
                best_seed = val;
        }
        seed_bound = best_seed; // nonzero: some a is admissible since v != 0 mod p0
    }

    mpz_class dep = dependency_modulus(pres);

    mpz_class best_value = 0; // 0 = not found yet
    mpz_class best_p;
    unsigned best_k = 0;
    ZVec best_a;

    auto prune_bound = [&]() {
        return (best_value != 0 && best_value < seed_bound) ? best_value : seed_bound;
    };

    auto scan_point = [&](const ZVec& a, const mpz_class& p, unsigned k) {
        mpz_class val = candidate_value(pres, a, p, k);
        if (best_value == 0 || val < best_value) {
            best_value = val;
            best_p = p;
            best_k = k;
            best_a = a;
        }
    };

    for (mpz_class p = 2; p <= prune_bound(); p = next_prime(p)) {
        if (p > opts.prime_power_cap)
            break;
        bool degenerate = (dep % p == 0);
        mpz_class pk = p;
        for (unsigned k = 1;; ++k, pk *= p) {
            if (pk > prune_bound())
                break;
            // skew ranks are even, so away from degenerate primes the value
            // is at least p^{k(1+2)}
            if (!degenerate && pk * pk * pk > prune_bound())
                break;
            if (vanishes_mod(v, pk))
                continue; // no admissible projection at this level
            auto reps = cyclic_projections(n, p, k);
            std::vector<std::size_t> admissible;
            admissible.reserve(reps.size());
            for (std::size_t i = 0; i < reps.size(); ++i)
                if (dot(reps[i], v) % pk != 0)
                    admissible.push_back(i);

            if (opts.jobs > 1 && admissible.size() >= 128) {
                unsigned jobs = opts.jobs;
                std::vector<std::future<std::pair<mpz_class, std::size_t>>> futs;
                std::size_t chunk = (admissible.size() + jobs - 1) / jobs;
                for (unsigned t = 0; t < jobs; ++t) {
                    std::size_t lo = t * chunk;
                    std::size_t hi = std::min(admissible.size(), lo + chunk);
                    if (lo >= hi)
                        break;
                    futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
                        mpz_class local_best = 0;
                        std::size_t local_idx = 0;
                        for (std::size_t t2 = lo; t2 < hi; ++t2) {
                            mpz_class val = candidate_value(pres, reps[admissible[t2]], p, k);
                            if (local_best == 0 || val < local_best) {
                                local_best = val;
                                local_idx = admissible[t2];
                            }
                        }
                        return std::make_pair(local_best, local_idx);
                    }));
                }
                // deterministic reduce: smallest value, then smallest index
                mpz_class round_best = 0;
                std::size_t round_idx = 0;
                for (auto& f : futs) {
                    auto [val, idx] = f.get();
                    if (val == 0)
                        continue;
                    if (round_best == 0 || val < round_best ||
                        (val == round_best && idx < round_idx)) {
                        round_best = val;
                        round_idx = idx;
                    }
                }
                if (round_best != 0 && (best_value == 0 || round_best < best_value)) {
                    best_value = round_best;
                    best_p = p;
                    best_k = k;
                    best_a = reps[round_idx];
                }
            } else {
                for (std::size_t idx : admissible)
                    scan_point(reps[idx], p, k);
            }
        }
    }

    if (best_value == 0 || prune_bound() > opts.prime_power_cap)
        throw resource_error("divisibility_central: minimum not certified below the prime-power cap");

    DivisibilityResult res;
    res.value = best_value;
    res.witness.p = best_p;
    res.witness.k = best_k;
    res.witness.a = best_a;
    res.witness.index = best_value;
    IntMatrix ma = pres.pencil().evaluate(best_a);
    res.witness.lattice_B = kernel_mod(ma, best_p, best_k);
    IntMatrix arow(1, n);
    for (std::size_t j = 0; j < n; ++j)
        arow.at(0, j) = best_a[j];
    res.witness.lattice_D = kernel_mod(arow, pow(best_p, best_k));
    return res;
}

namespace {

// Largest B <= Z^m with phi(B, Z^m) inside D: intersect the congruence
// kernels R_i w = 0 mod s_i read off from the Smith form of D's basis.
Sublattice largest_companion_lattice(const GroupPresentation& pres, const Sublattice& d)
{
    std::size_t m = pres.m(), n = pres.n();
    auto s = snf(d.basis());
    IntMatrix basis = IntMatrix::identity(m);
    for (std::size_t i = 0; i < n; ++i) {
        const mpz_class& si = s.diag[i];
        if (si == 1)
            continue;
        IntMatrix ri(m, m);
        for (std::size_t l = 0; l < n; ++l) {
            if (s.left.at(i, l) == 0)
                continue;
            ri = ri + pres.matrix(l).transpose().scaled(s.left.at(i, l));
        }
        Sublattice ker = kernel_mod(ri * basis, si);
        basis = basis * ker.basis();
    }
    return Sublattice::from_generators(basis);
}

// All sublattices of Z^n of the given index, via row-style Hermite forms.
void enumerate_sublattices_of_index(std::size_t n, const mpz_class& index,
                                    const std::function<void(const Sublattice&)>& visit)
{
    std::vector<mpz_class> divisors;
    for (mpz_class d = 1; d * d <= index; ++d) {
        if (index % d == 0) {
            divisors.push_back(d);
            if (d * d != index)
                divisors.push_back(index / d);
        }
    }
    std::sort(divisors.begin(), divisors.end());

    std::vector<mpz_class> diag(n);
    std::function<void(std::size_t, const mpz_class&)> rec_diag =
        [&](std::size_t pos, const mpz_class& remaining) {
            if (pos + 1 == n) {
                diag[pos] = remaining;
                // upper-triangular entries: r[j][i] in [0, diag[i]) for j < i
                IntMatrix r(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    r.at(i, i) = diag[i];
                std::vector<std::pair<std::size_t, std::size_t>> slots;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < i; ++j)
                        if (diag[i] > 1)
                            slots.emplace_back(j, i);
                std::function<void(std::size_t)> rec_fill = [&](std::size_t si) {
                    if (si == slots.size()) {
                        visit(Sublattice::from_generators(r.transpose()));
                        return;
                    }
                    auto [row, col] = slots[si];
                    for (mpz_class val = 0; val < diag[col]; ++val) {
                        r.at(row, col) = val;
                        rec_fill(si + 1);
                    }
                    r.at(row, col) = 0;
                };
                rec_fill(0);
                return;
            }
            for (const auto& d : divisors) {
                if (remaining % d != 0)
                    continue;
                diag[pos] = d;
                rec_diag(pos + 1, remaining / d);
            }
        };
    rec_diag(0, index);
}

} // namespace

std::optional<OracleResult> divisibility_oracle(const GroupPresentation& pres,
                                                const ZVec& v,
                                                const mpz_class& index_bound)
{
    std::size_t n = pres.n();
    if (v.size() != n)
        throw std::invalid_argument("divisibility_oracle: v has wrong dimension");
    if (is_zero(v))
        throw std::invalid_argument("divisibility_oracle: v must be nonzero");

    std::optional<OracleResult> best;
    for (mpz_class idx = 2; idx <= index_bound; ++idx) {
        if (best && idx > best->value)
            break; // value >= [Z^n : D] = idx, later indices cannot win
        enumerate_sublattices_of_index(n, idx, [&](const Sublattice& d) {
            if (d.contains(v))
                return;
            Sublattice b = largest_companion_lattice(pres, d);
            mpz_class value = idx * b.index();
            if (!best || value < best->value)
                best = OracleResult{value, b, d};
        });
    }
    return best;
}

std::optional<mpz_class>
divisibility_upper_primes(const GroupPresentation& pres, const ZVec& v,
                          const std::vector<mpz_class>& primes)
{
    if (primes.empty())
        throw std::invalid_argument("divisibility_upper_primes: prime list is empty");
    if (v.size() != pres.n())
        throw std::invalid_argument("divisibility_upper_primes: v has wrong dimension");
    std::optional<mpz_class> best;
    for (const auto& p : primes) {
        if (!is_prime(p))
            throw std::invalid_argument("divisibility_upper_primes: " + p.get_str() + " is not prime");
        if (vanishes_mod(v, p))
            continue;
        for (const auto& a : cyclic_projections(pres.n(), p, 1)) {
            if (dot(a, v) % p == 0)
                continue;
            mpz_class val = candidate_value(pres, a, p, 1);
            if (!best || val < *best)
                best = val;
        }
    }
    return best;
}

mpz_class abelian_divisibility(const ZVec& w)
{
    if (is_zero(w))
        throw std::invalid_argument("abelian_divisibility: zero vector");
    mpz_class g = gcd(w);
    // Candidates are p^{v_p(g)+1} for p | g and the smallest prime q not
    // dividing g. Past q, any p | g yields p^{v+1} >= p^2 > q, so the scan
    // stops at q.
    mpz_class best = 0;
    mpz_class rest = g;
    for (mpz_class p = 2;; p = next_prime(p)) {
        if (g % p != 0) {
            if (best == 0 || p < best)
                best = p;
            break;
        }
        unsigned vp = 0;
        while (rest % p == 0) {
            rest /= p;
            ++vp;
        }
        mpz_class cand = pow(p, vp + 1);
        if (best == 0 || cand < best)
            best = cand;
    }
    return best;
}

std::vector<RFProfilePoint> rf_profile(const GroupPresentation& pres, unsigned r_max,
                                       std::size_t ball_budget)
{
    std::vector<RFProfilePoint> out;
    std::map<ZVec, mpz_class> central_cache;

    auto nicer = [](const GroupElement& a, const GroupElement& b) {
        // prefer small absolute entries, positives before negatives
        auto key = [](const ZVec& v) {
            std::vector<std::pair<mpz_class, int>> k;
            k.reserve(v.size());
            for (const auto& x : v)
                k.emplace_back(abs(x), x < 0 ? 1 : 0);
            return k;
        };
        auto ka = std::make_pair(key(a.w), key(a.v));
        auto kb = std::make_pair(key(b.w), key(b.v));
        return ka < kb;
    };

    for (unsigned r = 1; r <= r_max; ++r) {
        auto ball = pres.ball(r, ball_budget);
        RFProfilePoint pt;
        pt.radius = r;
        pt.ball_size = ball.size();
        bool have = false;
        for (const auto& g : ball) {
            if (g.is_identity())
                continue;
            mpz_class val;
            bool central = is_zero(g.w);
            if (central) {
                ZVec key = g.v;
                // D(0, v) = D(0, -v); canonicalize the cache key
                for (std::size_t i = 0; i < key.size(); ++i) {
                    if (key[i] == 0)
                        continue;
                    if (key[i] < 0)
                        for (auto& x : key)
                            x = -x;
                    break;
                }
                auto it = central_cache.find(key);
                if (it == central_cache.end())
                    it = central_cache.emplace(key, divisibility_central(pres, key).value).first;
                val = it->second;
            } else {
                val = abelian_divisibility(g.w);
            }
            if (!have || val > pt.max_divisibility ||
                (val == pt.max_divisibility && nicer(g, pt.argmax))) {
                have = true;
                pt.max_divisibility = val;
                pt.argmax = g;
                pt.argmax_central = central;
            }
        }
        if (have)
            out.push_back(std::move(pt));
    }
    return out;
}

} // namespace nilrf
