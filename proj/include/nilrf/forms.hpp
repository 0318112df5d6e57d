#ifndef NILRF_FORMS_HPP
#define NILRF_FORMS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilrf/intmat.hpp"
#include "nilrf/unipoly.hpp"

namespace nilrf {

// Exponent vector; entries sum to the degree of the form.
using Monomial = std::vector<unsigned>;

// Homogeneous polynomial of fixed degree with exact rational coefficients.
// Zero coefficients are never stored.
class HomogeneousForm {
public:
    HomogeneousForm() = default;
    HomogeneousForm(std::size_t nvars, unsigned degree)
        : nvars_(nvars), degree_(degree) {}

    static HomogeneousForm monomial(std::size_t nvars, Monomial exp,
                                    const mpq_class& coeff);
    // c0*x1 + c1*x2 + ...
    static HomogeneousForm linear(const QVec& coeffs);
    static HomogeneousForm linear(const ZVec& coeffs);

    std::size_t nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return degree_ == 0; }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, mpq_class>& terms() const { return terms_; }
    mpq_class coeff(const Monomial& m) const;

    bool operator==(const HomogeneousForm& o) const = default;

    HomogeneousForm operator+(const HomogeneousForm& o) const;
    HomogeneousForm operator-(const HomogeneousForm& o) const;
    HomogeneousForm operator*(const HomogeneousForm& o) const;
    HomogeneousForm scaled(const mpq_class& c) const;
    HomogeneousForm pow(unsigned e) const;
    mpq_class eval(const QVec& point) const;
    mpq_class eval(const ZVec& point) const;

    // Substitute x_i -> images[i] (a linear form over nvars_out variables).
    HomogeneousForm substitute_linear(const std::vector<QVec>& images,
                                      std::size_t nvars_out) const;

    // Content-free with positive coefficient on the lex-greatest monomial.
    HomogeneousForm normalized() const;
    // The rational s with normalized() == scaled(s) (nonzero forms only).
    mpq_class normalization_scale() const;

    // Binary-form helpers (nvars == 2).
    UniPoly dehomogenize() const;   // x1 -> t, x2 -> 1
    unsigned y_valuation() const;   // smallest x2-exponent; throws on zero
    static HomogeneousForm homogenize_binary(const UniPoly& g, unsigned extra_y);

    std::string to_string() const; // variables printed x1, x2, ...

private:
    void insert(Monomial m, const mpq_class& c);

    std::size_t nvars_ = 0;
    unsigned degree_ = 0;
    std::map<Monomial, mpq_class> terms_;
};

// Plain structural order (shape, then term maps); usable as a map/set key.
bool operator<(const HomogeneousForm& a, const HomogeneousForm& b);

// Order used for generator lists: fewer terms first, then lex-greater leading
// monomial, then structural.
bool canonical_form_less(const HomogeneousForm& a, const HomogeneousForm& b);

// Matrix whose entries are integer linear forms in nvars variables, stored as
// one integer coefficient matrix per variable.
class SymbolicMatrix {
public:
    SymbolicMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
        : coef_(nvars, IntMatrix(rows, cols)) {}
    explicit SymbolicMatrix(std::vector<IntMatrix> coefficient_matrices);

    std::size_t rows() const { return coef_.at(0).rows(); }
    std::size_t cols() const { return coef_.at(0).cols(); }
    std::size_t nvars() const { return coef_.size(); }
    const IntMatrix& coefficient(std::size_t var) const { return coef_[var]; }
    std::vector<IntMatrix>& coefficients() { return coef_; }
    const std::vector<IntMatrix>& coefficients() const { return coef_; }

    // Coefficient of x_{var} in entry (i, j).
    const mpz_class& entry_coeff(std::size_t i, std::size_t j, std::size_t var) const
    {
        return coef_[var].at(i, j);
    }
    void set_entry(std::size_t i, std::size_t j, const ZVec& linear_coeffs);
    HomogeneousForm entry(std::size_t i, std::size_t j) const;

    IntMatrix evaluate(const ZVec& a) const; // sum a_i * A_i

    bool operator==(const SymbolicMatrix& o) const = default;

    // Determinant of the submatrix selected by sorted index lists.
    HomogeneousForm minor_det(const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols) const;

private:
    std::vector<IntMatrix> coef_;
};

// Square symbolic matrix with skew-symmetric coefficient matrices: the pencil
// sum_i x_i A_i attached to an alternating bilinear map.
class SymbolicPencil {
public:
    explicit SymbolicPencil(std::vector<IntMatrix> coefficient_matrices);

    std::size_t size() const { return mat_.rows(); }
    std::size_t nvars() const { return mat_.nvars(); }
    const SymbolicMatrix& matrix() const { return mat_; }
    const IntMatrix& coefficient(std::size_t var) const { return mat_.coefficient(var); }
    IntMatrix evaluate(const ZVec& a) const { return mat_.evaluate(a); }

    // New variables x'_j with A'_j = sum_i P[j][i] A_i (P unimodular).
    SymbolicPencil variable_change(const IntMatrix& P) const;
    // A'_i = Q^T A_i Q (Q unimodular).
    SymbolicPencil basis_change(const IntMatrix& Q) const;

    bool operator==(const SymbolicPencil& o) const = default;

private:
    SymbolicMatrix mat_;
};

// All d x d minors as degree-d forms, normalized, deduplicated, canonically
// ordered. Throws if d is out of range [1, min(rows, cols)].
std::vector<HomogeneousForm> minor_ideal_generators(const SymbolicMatrix& M,
                                                    std::size_t d);
std::vector<HomogeneousForm> minor_ideal_generators(const SymbolicPencil& M,
                                                    std::size_t d);

// For a two-variable pencil: generator of the smallest principal ideal
// containing all d x d minors, computed from the determinantal divisors of
// t A_1 + A_2 over Q[t] with the x2-multiplicity tracked via A_1 + s A_2.
// Returns the zero form (of degree d) when every minor vanishes.
HomogeneousForm gcd_minors_binary(const SymbolicPencil& M, std::size_t d);

struct LinearPower {
    ZVec v;                // primitive, first nonzero entry positive
    unsigned multiplicity; // equals deg g for a pure power
};

// Decides whether a nonzero binary form is a scalar times the power of a
// single rational linear form.
std::optional<LinearPower> rational_linear_factor(const HomogeneousForm& g);

// Incremental row space of forms of a fixed shape, with the ability to
// express a target as an exact combination of previously added forms.
class FormSpan {
public:
    FormSpan(std::size_t nvars, unsigned degree);

    std::size_t add(const HomogeneousForm& f); // returns index of f
    bool grew_on_last_add() const { return grew_; }
    std::size_t dim() const { return rows_.size(); }
    bool contains(const HomogeneousForm& f) const;
    // Coefficients over added forms (by index); absent entries are zero.
    std::optional<std::map<std::size_t, mpq_class>>
    express(const HomogeneousForm& target) const;

    const std::vector<Monomial>& monomials() const { return monomials_; }
    QVec densify(const HomogeneousForm& f) const;

private:
    std::size_t nvars_;
    unsigned degree_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, std::size_t> monomial_index_;
    struct Row {
        QVec vec;
        std::map<std::size_t, mpq_class> combo;
        std::size_t lead;
    };
    std::vector<Row> rows_; // echelon, sorted by lead
    std::size_t n_added_ = 0;
    bool grew_ = false;
};

// All monomials of the given degree in nvars variables, lex-descending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

} // namespace nilrf

#endif
