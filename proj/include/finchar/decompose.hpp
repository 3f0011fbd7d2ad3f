#ifndef FINCHAR_DECOMPOSE_HPP
#define FINCHAR_DECOMPOSE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "finchar/triset.hpp"
#include "finchar/zdd.hpp"

namespace finchar {

enum class Algorithm { tdcs, tdcs2, mfcs };

Algorithm algorithm_from_string(const std::string& name);
std::string algorithm_name(Algorithm alg);

// Aggregated over a whole solve.  All fields are scheduling-independent:
// sums and maxima of per-system quantities.
struct SolveStats {
    std::uint64_t mul_count = 0;      // polynomial-by-polynomial products
    std::uint64_t max_len = 0;        // max length over intermediate polynomials
    std::uint64_t max_terms = 0;      // max term count over intermediate polynomials
    std::uint64_t branch_count = 0;   // split events
    std::uint64_t n_components = 0;   // emitted components

    std::uint64_t td_invocations = 0;
    std::uint64_t td_bound_violations = 0;  // multiplication bound per invocation

    std::uint64_t mf_invocations = 0;
    std::uint64_t mf_audited_invocations = 0;
    std::uint64_t mf_mul_violations = 0;       // multiplication-free property
    std::uint64_t mf_len_violations = 0;       // input length-sum bound
    std::uint64_t mf_len_refined_violations = 0;
    std::uint64_t mf_term_violations = 0;      // term-count bound
    std::uint64_t mf_monomial_violations = 0;  // distinct-monomial bound
    std::uint64_t mf_add_violations = 0;       // addition-count bound

    void merge(const SolveStats& other);
};

struct SolveOptions {
    unsigned threads = 1;
    std::uint64_t max_components = 0;  // 0 = use default (FINCHAR_MAX_COMPONENTS or 2^24)
    double time_budget_seconds = 0;    // 0 = unlimited
    bool audit_monomials = true;       // distinct-monomial accounting in MF runs
};

std::uint64_t default_component_cap();

struct Decomposition {
    std::vector<TriangularSet> components;
    SolveStats stats;
    double wall_seconds = 0;
    bool complete = true;
};

// Sum of component counts (only meaningful for a complete decomposition).
BigInt decomposition_count(const Decomposition& d);

class ResourceCapError : public std::runtime_error {
public:
    ResourceCapError(std::string what, Decomposition partial_result)
        : std::runtime_error(std::move(what)), partial(std::move(partial_result)) {}
    Decomposition partial;
};

// ---------------------------------------------------------------------------
// single elimination passes (the well-ordering procedures)

struct TdTrisetResult {
    bool inconsistent = false;
    std::vector<Poly> chain;  // monic, one class each; empty allowed
    std::vector<std::vector<Poly>> branches;
};

// Top-down elimination over R_q.  Picks the lowest-degree polynomial of the
// highest class; monic pivots reduce the rest, non-monic pivots split the
// zero set and continue on the branch where the initial does not vanish.
TdTrisetResult td_triset(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                         SolveStats* stats = nullptr);

struct BoolTrisetResult {
    bool inconsistent = false;
    std::vector<BoolPoly> chain;
    std::vector<std::vector<BoolPoly>> branches;
};

// q = 2 elimination with the merged branch condition I*U + I + U.
BoolTrisetResult td_triset2(ZddStore& store, std::vector<BoolPoly> ps, std::uint32_t nvars,
                            SolveStats* stats = nullptr);

// Multiplication-free elimination: every class-c polynomial is split into
// its monic part before reduction, and pseudo-remainders are plain
// additions.
BoolTrisetResult mf_triset(ZddStore& store, std::vector<BoolPoly> ps, std::uint32_t nvars,
                           SolveStats* stats = nullptr, bool audit_monomials = true);

// ---------------------------------------------------------------------------
// full decompositions

// Monic proper triangular sets with pairwise disjoint zero sets covering
// hzero(ps).  Components are returned in a canonical order independent of
// scheduling.  Throws ResourceCapError with the work done so far when the
// component cap or time budget is exceeded.
Decomposition tdcs(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                   const SolveOptions& opts = {});
Decomposition tdcs2(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                    const SolveOptions& opts = {});
Decomposition mfcs(std::vector<Poly> ps, const FieldSpecPtr& spec, std::uint32_t nvars,
                   const SolveOptions& opts = {});

Decomposition solve(Algorithm alg, std::vector<Poly> ps, const FieldSpecPtr& spec,
                    std::uint32_t nvars, const SolveOptions& opts = {});

// ---------------------------------------------------------------------------
// instrumentation report

struct BoundCheck {
    std::string name;
    bool applicable = false;
    bool pass = true;
    std::string detail;
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    bool all_pass() const;
};

// Per-invocation bounds are enforced while solving; this renders the
// outcome: the multiplication bound for the top-down passes, the
// multiplication-free property, the length/term/distinct-monomial bounds
// and the addition-count bound for MF passes.
BoundReport stats_check(const SolveStats& stats, Algorithm alg);

}  // namespace finchar

#endif
