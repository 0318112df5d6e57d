#ifndef NILRF_GROUP_HPP
#define NILRF_GROUP_HPP

#include <set>
#include <string>
#include <vector>

#include "nilrf/forms.hpp"
#include "nilrf/intmat.hpp"

namespace nilrf {

// Element (w, v) of the group on Z^m x Z^n.
struct GroupElement {
    ZVec w;
    ZVec v;

    bool operator==(const GroupElement& o) const = default;
    bool is_identity() const { return nilrf::is_zero(w) && nilrf::is_zero(v); }
    std::string to_string() const;
};

bool operator<(const GroupElement& a, const GroupElement& b); // lex, for sets

struct FreeLetter {
    std::size_t gen; // 0-based generator index
    int exp;         // +1 or -1
};

// Word in the free 2-step generators together with a central tail.
struct FreeWord {
    std::vector<FreeLetter> letters;
    ZVec tail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

// Presentation of the 2-step group attached to an alternating bilinear map
// Z^m x Z^m -> Z^n given by n skew-symmetric m x m matrices. The group law
// uses only the strictly lower-triangular parts.
class GroupPresentation {
public:
    explicit GroupPresentation(std::vector<IntMatrix> matrices,
                               std::string name = "");

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    const std::string& name() const { return name_; }
    const std::vector<IntMatrix>& matrices() const { return a_; }
    const IntMatrix& matrix(std::size_t i) const { return a_[i]; }
    const IntMatrix& matrix_lower(std::size_t i) const { return a_lower_[i]; }

    // Skew-symmetry, fullness, and the rank-side remark (warning only).
    ValidationReport validate() const;

    ZVec phi(const ZVec& w1, const ZVec& w2) const;
    ZVec phi_lower(const ZVec& w1, const ZVec& w2) const;

    GroupElement identity() const;
    GroupElement multiply(const GroupElement& g1, const GroupElement& g2) const;
    GroupElement inverse(const GroupElement& g) const;
    GroupElement commutator(const GroupElement& g1, const GroupElement& g2) const;
    GroupElement power(const GroupElement& g, long e) const;

    // Base-form collection: sorts the word's letters by generator index,
    // accumulating commutation corrections in the tail. Agrees with
    // left-to-right multiplication.
    GroupElement collect(const FreeWord& word) const;

    // Exact metric ball of radius r for the standard generators of
    // Z^m x Z^n as a set. Throws resource_error past the element budget.
    std::set<GroupElement> ball(unsigned radius,
                                std::size_t budget = 1'000'000) const;

    // max(1, largest |phi_lower(e_i, e_j)| entry); the constant in the
    // quadratic bound on central coordinates over the ball.
    mpz_class metric_constant() const;

    SymbolicPencil pencil() const;

private:
    std::size_t m_ = 0, n_ = 0;
    std::vector<IntMatrix> a_;
    std::vector<IntMatrix> a_lower_;
    std::string name_;
};

} // namespace nilrf

#endif
