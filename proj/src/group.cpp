#include "nilrf/group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace nilrf {

std::string GroupElement::to_string() const
{
    return "(" + nilrf::to_string(w).substr(1, nilrf::to_string(w).size() - 2) +
           "; " + nilrf::to_string(v).substr(1, nilrf::to_string(v).size() - 2) + ")";
}

bool operator<(const GroupElement& a, const GroupElement& b)
{
    for (std::size_t i = 0; i < a.w.size(); ++i) {
        int c = cmp(a.w[i], b.w[i]);
        if (c != 0)
            return c < 0;
    }
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        int c = cmp(a.v[i], b.v[i]);
        if (c != 0)
            return c < 0;
    }
    return false;
}

GroupPresentation::GroupPresentation(std::vector<IntMatrix> matrices, std::string name)
    : a_(std::move(matrices)), name_(std::move(name))
{
    if (a_.empty())
        throw std::invalid_argument("GroupPresentation: at least one matrix required");
    m_ = a_[0].rows();
    n_ = a_.size();
    for (const auto& mat : a_)
        if (mat.rows() != m_ || mat.cols() != m_)
            throw std::invalid_argument("GroupPresentation: matrices must be square of equal size");
    a_lower_.reserve(n_);
    for (const auto& mat : a_) {
        IntMatrix low(m_, m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                low.at(i, j) = mat.at(i, j);
        a_lower_.push_back(std::move(low));
    }
}

ValidationReport GroupPresentation::validate() const
{
    ValidationReport rep;
    for (std::size_t i = 0; i < n_; ++i)
        if (!a_[i].is_skew_symmetric()) {
            rep.ok = false;
            rep.errors.push_back("matrix " + std::to_string(i + 1) + " is not skew-symmetric");
        }
    if (!rep.ok)
        return rep;

    // Fullness: the values phi(e_i, e_j) must span a finite-index subgroup
    // of Z^n, i.e. a rank-n lattice.
    std::size_t pairs = m_ * (m_ - 1) / 2;
    IntMatrix values(n_, pairs == 0 ? 1 : pairs);
    std::size_t col = 0;
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = i + 1; j < m_; ++j) {
            for (std::size_t l = 0; l < n_; ++l)
                values.at(l, col) = a_[l].at(i, j);
            ++col;
        }
    if (values.rank() < n_) {
        rep.ok = false;
        rep.errors.push_back("map is not full: commutator values span rank " +
                             std::to_string(values.rank()) + " < n = " + std::to_string(n_));
    }

    // Side constraint relating m and n. The printed inequality m <= n(n-1)/2
    // fails for basic full examples while its mirror n <= m(m-1)/2 is what
    // fullness actually forces; neither is enforced here.
    if (m_ > n_ * (n_ - 1) / 2) {
        std::string note = "m <= n(n-1)/2 does not hold (m=" + std::to_string(m_) +
                           ", n=" + std::to_string(n_) + "); mirrored reading n <= m(m-1)/2 ";
        note += (n_ <= m_ * (m_ - 1) / 2) ? "holds" : "also fails";
        rep.warnings.push_back(note);
    }
    return rep;
}

ZVec GroupPresentation::phi(const ZVec& w1, const ZVec& w2) const
{
    if (w1.size() != m_ || w2.size() != m_)
        throw std::invalid_argument("phi: dimension mismatch");
    ZVec out(n_);
    for (std::size_t l = 0; l < n_; ++l) {
        mpz_class acc = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (w1[i] == 0)
                continue;
            for (std::size_t j = 0; j < m_; ++j)
                if (w2[j] != 0)
                    acc += w1[i] * a_[l].at(i, j) * w2[j];
        }
        out[l] = acc;
    }
    return out;
}

ZVec GroupPresentation::phi_lower(const ZVec& w1, const ZVec& w2) const
{
    if (w1.size() != m_ || w2.size() != m_)
        throw std::invalid_argument("phi_lower: dimension mismatch");
    ZVec out(n_);
    for (std::size_t l = 0; l < n_; ++l) {
        mpz_class acc = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (w1[i] == 0)
                continue;
            for (std::size_t j = 0; j < i; ++j)
                if (w2[j] != 0)
                    acc += w1[i] * a_lower_[l].at(i, j) * w2[j];
        }
        out[l] = acc;
    }
    return out;
}

GroupElement GroupPresentation::identity() const
{
    return {ZVec(m_, mpz_class(0)), ZVec(n_, mpz_class(0))};
}

GroupElement GroupPresentation::multiply(const GroupElement& g1, const GroupElement& g2) const
{
    if (g1.w.size() != m_ || g2.w.size() != m_ || g1.v.size() != n_ || g2.v.size() != n_)
        throw std::invalid_argument("multiply: dimension mismatch");
    GroupElement r;
    r.w.resize(m_);
    r.v = phi_lower(g1.w, g2.w);
    for (std::size_t i = 0; i < m_; ++i)
        r.w[i] = g1.w[i] + g2.w[i];
    for (std::size_t i = 0; i < n_; ++i)
        r.v[i] += g1.v[i] + g2.v[i];
    return r;
}

GroupElement GroupPresentation::inverse(const GroupElement& g) const
{
    GroupElement r;
    r.w.resize(m_);
    for (std::size_t i = 0; i < m_; ++i)
        r.w[i] = -g.w[i];
    r.v = phi_lower(g.w, g.w);
    for (std::size_t i = 0; i < n_; ++i)
        r.v[i] -= g.v[i];
    return r;
}

GroupElement GroupPresentation::commutator(const GroupElement& g1, const GroupElement& g2) const
{
    GroupElement r;
    r.w = ZVec(m_, mpz_class(0));
    r.v = phi(g1.w, g2.w);
    return r;
}

GroupElement GroupPresentation::power(const GroupElement& g, long e) const
{
    GroupElement base = e < 0 ? inverse(g) : g;
    unsigned long count = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    GroupElement acc = identity();
    for (unsigned long i = 0; i < count; ++i)
        acc = multiply(acc, base);
    return acc;
}

GroupElement GroupPresentation::collect(const FreeWord& word) const
{
    if (word.tail.size() != n_)
        throw std::invalid_argument("collect: tail dimension mismatch");
    for (const auto& let : word.letters)
        if (let.gen >= m_ || (let.exp != 1 && let.exp != -1))
            throw std::invalid_argument("collect: bad letter");
    std::vector<FreeLetter> letters = word.letters;
    ZVec tail = word.tail;
    // Bubble passes; each adjacent transposition of letters a, b contributes
    // phi(a, b) to the central tail.
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t k = 0; k + 1 < letters.size(); ++k) {
            if (letters[k].gen <= letters[k + 1].gen)
                continue;
            std::size_t i = letters[k].gen, j = letters[k + 1].gen;
            int sign = letters[k].exp * letters[k + 1].exp;
            for (std::size_t l = 0; l < n_; ++l)
                tail[l] += sign * a_[l].at(i, j);
            std::swap(letters[k], letters[k + 1]);
            swapped = true;
        }
    }
    GroupElement r;
    r.w = ZVec(m_, mpz_class(0));
    for (const auto& let : letters)
        r.w[let.gen] += let.exp;
    r.v = std::move(tail);
    return r;
}

std::set<GroupElement> GroupPresentation::ball(unsigned radius, std::size_t budget) const
{
    // (e_i, 0)^{-1} = (-e_i, phi_lower(e_i, e_i)) = (-e_i, 0), so the
    // generator set is plain signed unit vectors in both components.
    std::vector<GroupElement> gens;
    gens.reserve(2 * (m_ + n_));
    for (std::size_t i = 0; i < m_; ++i)
        for (int s : {1, -1}) {
            GroupElement g = identity();
            g.w[i] = s;
            gens.push_back(std::move(g));
        }
    for (std::size_t j = 0; j < n_; ++j)
        for (int s : {1, -1}) {
            GroupElement g = identity();
            g.v[j] = s;
            gens.push_back(std::move(g));
        }

    std::set<GroupElement> seen{identity()};
    std::deque<GroupElement> frontier{identity()};
    for (unsigned step = 0; step < radius; ++step) {
        std::deque<GroupElement> next;
        for (const auto& g : frontier) {
            for (const auto& s : gens) {
                GroupElement h = multiply(g, s);
                if (seen.insert(h).second) {
                    if (seen.size() > budget)
                        throw resource_error("ball: element budget exceeded");
                    next.push_back(std::move(h));
                }
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

mpz_class GroupPresentation::metric_constant() const
{
    mpz_class c = 1;
    for (const auto& low : a_lower_)
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                c = std::max(c, mpz_class(abs(low.at(i, j))));
    return c;
}

SymbolicPencil GroupPresentation::pencil() const
{
    return SymbolicPencil(a_);
}

} // namespace nilrf
