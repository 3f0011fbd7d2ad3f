#ifndef FINCHAR_TRISET_HPP
#define FINCHAR_TRISET_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "finchar/oracle.hpp"
#include "finchar/poly.hpp"

namespace finchar {

using BigInt = boost::multiprecision::cpp_int;

// Ordered set of nonzero polynomials with strictly increasing classes.  An
// empty set is allowed and denotes the whole affine space F_q^n.
class TriangularSet {
public:
    TriangularSet() = default;
    // Accepts the polynomials in any order; they are sorted by class.
    // Throws std::invalid_argument on zero or constant members or repeated
    // classes.
    static TriangularSet make(FieldSpecPtr spec, std::uint32_t nvars, std::vector<Poly> polys);

    const FieldSpecPtr& spec() const { return spec_; }
    std::uint32_t nvars() const { return nvars_; }
    const std::vector<Poly>& polys() const { return polys_; }
    std::size_t size() const { return polys_.size(); }
    bool empty() const { return polys_.empty(); }

    std::vector<std::uint32_t> classes() const;
    std::vector<std::uint32_t> degrees() const;
    // Variables that are not leading variables, ascending.
    std::vector<std::uint32_t> parameters() const;

    // Product of the initials, normalized in R_q.
    Poly initials_product(MulCounter* counter = nullptr) const;

private:
    FieldSpecPtr spec_;
    std::uint32_t nvars_ = 0;
    std::vector<Poly> polys_;  // ascending class
};

// prem(Q, A) = prem(prem(Q, A_r), A_1..A_{r-1}).
Poly prem_set(const Poly& q, const TriangularSet& a, MulCounter* counter = nullptr);

// Remainder formula data: prod(initial_i^power_i) * Q = sum(quotients_i * A_i) + remainder.
struct PremSetRecord {
    std::vector<std::uint32_t> powers;
    std::vector<Poly> quotients;
    Poly remainder;
};
PremSetRecord prem_set_with_record(const Poly& q, const TriangularSet& a);

// Sylvester resultant of p and r wrt x_var, computed on canonical
// representatives.  When one operand does not involve the variable the
// usual degenerate conventions apply.
Poly resultant(const Poly& p, const Poly& r, std::uint32_t var);

// res(P, A) = res(res(P, A_r, x_{c_r}), A_1..A_{r-1}); res(P, {}) = P.
Poly res_set(const Poly& p, const TriangularSet& a);

bool ts_is_monic(const TriangularSet& a);
// prem(x_c^(q-d) * A_i, A) = 0 for every member.  Monic sets over q = 2 are
// always proper and short-circuit.
bool ts_is_proper(const TriangularSet& a, MulCounter* counter = nullptr);
// Product of the recursive resultants of the initials is nonzero in R_q.
bool ts_is_regular(const TriangularSet& a);

BigInt ts_degree(const TriangularSet& a);
std::uint32_t ts_dim(const TriangularSet& a);
// deg(A) * q^dim(A); requires monic and proper (throws std::invalid_argument).
BigInt ts_count(const TriangularSet& a);

// All zeros of a monic proper set by parameter sweep and cascaded
// univariate root search.  Parameters run in lexicographic order, roots in
// field-code order.  Throws std::invalid_argument when the count exceeds
// `limit`, std::logic_error if a specialization does not have exactly
// deg(A_i) distinct roots.
std::vector<Point> ts_enumerate(const TriangularSet& a, std::uint64_t limit);

// Parametric value with nonzero resultant product, per the regular-chain
// solution-count result; requires regular and proper.  The search space
// q^dim is capped.
struct WitnessLimits {
    std::uint64_t max_points = std::uint64_t(1) << 24;
};
std::optional<Point> ts_regular_witness(const TriangularSet& a, WitnessLimits limits = {});

// Generators of the saturation ideal at zero-set level:
// A_1,...,A_r, I_A^(q-1) - 1 (the last dropped if it normalizes to 0).
std::vector<Poly> ts_saturation_generators(const TriangularSet& a);

// Ordering on triangular sets used by the termination argument: compares
// member ranks from the lowest class up; a longer set extending an
// equal-ranked prefix is lower.
enum class TriSetOrder { lower, same, higher };
TriSetOrder ts_compare(const TriangularSet& a, const TriangularSet& b);

}  // namespace finchar

#endif
