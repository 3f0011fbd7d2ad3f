#ifndef FINCHAR_PROBLEMS_HPP
#define FINCHAR_PROBLEMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finchar/decompose.hpp"
#include "finchar/poly.hpp"
#include "finchar/zdd.hpp"

namespace finchar {

// Length-L linear feedback shift register given by its coefficient vector
// (c_1,...,c_L) over F_2 with c_L = 1: s_i = c_1 s_{i-1} + ... + c_L s_{i-L}.
struct LfsrSpec {
    std::uint32_t length = 0;
    std::vector<std::uint8_t> taps;  // taps[j] = c_{j+1}

    // Exponents of the nonzero feedback-polynomial coefficients, e.g.
    // {40,21,19,2,0} for x^40+x^21+x^19+x^2+1.  The list must contain L;
    // 0 is accepted and ignored (the constant term is always present).
    static LfsrSpec from_feedback_exponents(std::uint32_t length,
                                            const std::vector<std::uint32_t>& exponents);

    // Nonzero coefficients of the feedback polynomial, constant included.
    std::uint32_t weight() const;
};

// ANF of a filter function over x1..xm as a list of monomials (each a list
// of 1-based variable indices; an empty list is the constant 1).
struct FilterFunction {
    std::string name;
    std::uint32_t arity = 0;
    std::vector<std::vector<std::uint32_t>> monomials;
};

// The ten benchmark filters due to Canteaut and Filiol, 1-based.
FilterFunction canfil(int index);

struct NfgSpec {
    LfsrSpec lfsr;
    FilterFunction filter;
    std::vector<std::uint32_t> tap_positions;  // k_1, k_2, ...; the first m are used
    std::uint32_t keybits = 0;                 // number of output equations
};

struct ProblemInstance {
    FieldSpecPtr spec;
    std::uint32_t nvars = 0;
    std::vector<Poly> polys;
    // Full satisfying assignment recorded at generation, when planted.
    std::optional<std::vector<std::uint8_t>> planted;
    std::string family;
    std::uint64_t seed = 0;
};

// Linear expressions of s_0..s_{t_max} over the initial-state variables
// x_1..x_L (s_i = x_{i+1} for i < L).
std::vector<BoolPoly> lfsr_state_exprs(ZddStore& store, const LfsrSpec& lfsr,
                                       std::uint32_t t_max);

// Raw LFSR output bits s_0..s_{count-1} from an initial state.
std::vector<std::uint8_t> lfsr_sequence(const LfsrSpec& lfsr,
                                        const std::vector<std::uint8_t>& state,
                                        std::size_t count);

// Keystream z_0..z_{count-1} of the filter generator from an initial state.
std::vector<std::uint8_t> nfg_keystream(const NfgSpec& spec,
                                        const std::vector<std::uint8_t>& key,
                                        std::size_t count);

// The key-recovery equations f(s_{t+k_1},...,s_{t+k_m}) + z_t for
// t = 0..k-1, over the L initial-state variables.
ProblemInstance nfg_equations(const NfgSpec& spec, const std::vector<std::uint8_t>& keystream);

// Planted instance: random key from the seed, simulated keystream, and a
// generation-time check that the key satisfies every equation.
ProblemInstance make_nfg_instance(const NfgSpec& spec, std::uint64_t seed);

// Bivium-A equations over 2N+177 variables (x_1..x_177 the initial state,
// then one auxiliary pair per clock), 3N equations of degree at most 2.
ProblemInstance bivium_a_equations(std::uint32_t clocks,
                                   const std::vector<std::uint8_t>& keystream);
ProblemInstance make_bivium_instance(std::uint32_t clocks, std::uint64_t seed);
// Keystream and per-clock register feedback values from an initial state.
struct BiviumTrace {
    std::vector<std::uint8_t> keystream;
    std::vector<std::uint8_t> feedback_values;  // t1, t2 per clock
};
BiviumTrace bivium_trace(const std::vector<std::uint8_t>& state, std::uint32_t clocks);

// AB = I as n^2 quadratic equations over the 2n^2 entries of A and B, plus
// the BA = I polynomials used as the reduction check.
struct MatMulProblem {
    ProblemInstance instance;
    std::vector<Poly> check;
};
MatMulProblem matmul_equations(std::uint32_t n);

// True iff every check polynomial pseudo-reduces to 0 against every
// component.  The decomposition must be complete.
struct ReductionFailure {
    std::size_t component = 0;
    std::size_t poly = 0;
};
bool verify_reduction(const std::vector<Poly>& check, const Decomposition& d,
                      ReductionFailure* failure = nullptr);

}  // namespace finchar

#endif
