#ifndef FINCHAR_POLY_HPP
#define FINCHAR_POLY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finchar/field.hpp"

namespace finchar {

// One variable with a positive exponent; variables are 1-based (x1..xn).
struct VarPow {
    std::uint16_t var = 0;
    std::uint16_t exp = 0;

    friend bool operator==(const VarPow&, const VarPow&) = default;
};

// Product of variable powers, factors sorted by variable descending.  In
// canonical form every exponent is at most q-1.
struct Monomial {
    std::vector<VarPow> factors;

    bool is_one() const { return factors.empty(); }
    std::uint32_t total_degree() const;
    std::uint32_t degree_in(std::uint32_t var) const;
    std::uint32_t top_var() const { return factors.empty() ? 0 : factors.front().var; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order with x_n > ... > x_1; returns <0, 0, >0.
int compare_monomials(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    FieldElement coef;

    friend bool operator==(const Term&, const Term&) = default;
};

struct Rank {
    std::uint32_t cls = 0;  // 0 means constant
    std::uint32_t deg = 0;  // leading degree in x_cls

    friend bool operator==(const Rank&, const Rank&) = default;
};

enum class RankOrder { lower, same, higher };

// Counts the polynomial-by-polynomial products performed by a solve; scalar
// and monomial scalings are not polynomial multiplications.
struct MulCounter {
    std::uint64_t count = 0;
};

// Element of F_q[x_1..x_n]/(x_i^q - x_i) kept in canonical form: every
// exponent below q, no zero coefficients, terms sorted in descending graded
// lex order.  Immutable after construction.
class Poly {
public:
    Poly() = default;

    static Poly zero(FieldSpecPtr spec, std::uint32_t nvars);
    static Poly constant(FieldSpecPtr spec, std::uint32_t nvars, FieldElement value);
    static Poly variable(FieldSpecPtr spec, std::uint32_t nvars, std::uint32_t var);
    static Poly monomial(FieldSpecPtr spec, std::uint32_t nvars, Monomial m,
                         FieldElement coef);
    // Accepts arbitrary non-negative exponents and unsorted duplicate terms;
    // reduces x^e via x^q = x, merges, and drops zeros.
    static Poly from_terms(FieldSpecPtr spec, std::uint32_t nvars, std::vector<Term> raw);

    const FieldSpecPtr& spec() const { return spec_; }
    std::uint32_t nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return cls() == 0; }
    bool is_one() const;
    // Value of a constant polynomial (zero() for the zero polynomial).
    FieldElement constant_value() const;

    std::uint32_t cls() const;          // largest variable occurring, 0 for constants
    std::uint32_t deg() const;          // leading degree: deg in x_cls (0 for constants)
    std::uint32_t degree_in(std::uint32_t var) const;
    std::uint32_t total_degree() const;
    Rank rank() const { return {cls(), deg()}; }

    // P = initial * x_cls^deg + tail; throws std::invalid_argument on
    // constants.
    Poly initial() const;
    Poly tail() const;

    // Coefficient of x_var^e, viewed as a polynomial in the other variables.
    Poly coeff_of(std::uint32_t var, std::uint32_t e) const;

    // Total number of variable occurrences counted with multiplicity, with
    // constant terms counting one; the Boolean case matches the usual length
    // of an ANF.
    std::uint64_t length() const;

    Poly operator+(const Poly& other) const;
    Poly operator-(const Poly& other) const;
    Poly operator-() const;
    Poly scaled(FieldElement c) const;
    // Multiplication by x_var^e followed by normalization.
    Poly shifted(std::uint32_t var, std::uint32_t e) const;

    FieldElement eval(std::span<const FieldElement> point) const;
    // Substitutes the given values (index -> value for vars where set) and
    // returns the resulting polynomial over the same ambient variables.
    Poly eval_partial(const std::vector<std::optional<FieldElement>>& assignment) const;

    std::string to_string() const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    FieldSpecPtr spec_;
    std::uint32_t nvars_ = 0;
    std::vector<Term> terms_;  // canonical, descending graded lex
};

// Product in R_q.  When both operands are non-constant the counter, if
// given, is incremented; constant scaling is free.
Poly mul(const Poly& a, const Poly& b, MulCounter* counter = nullptr);
// Repeated multiplication (e factors), matching the elimination procedure's
// accounting; 0^0 = P^0 = 1.
Poly pow_repeated(const Poly& a, std::uint32_t e, MulCounter* counter = nullptr);

RankOrder compare_rank(const Poly& a, const Poly& b);

// Q reduced with respect to P: deg(Q, x_cls(P)) < deg(P).
bool is_reduced(const Poly& q, const Poly& p);

// Record of one pseudo-division: initial(P)^scale_power * Q = quotient * P + remainder.
struct PremRecord {
    std::uint32_t scale_power = 0;
    Poly quotient;
};

// Pseudo-remainder of Q wrt P (class >= 1, else std::invalid_argument).
// Canonical form is restored after every elimination step.
Poly prem(const Poly& q, const Poly& p, MulCounter* counter = nullptr,
          PremRecord* record = nullptr);

// Parse/print for the text grammar: terms joined by '+', each
// [coef*]factor(*factor)*, factors x<i>[^e]; 'g<code>' coefficients for
// extension fields.  '-' is accepted on input.
Poly parse_poly(const std::string& text, FieldSpecPtr spec, std::uint32_t nvars);

}  // namespace finchar

#endif
