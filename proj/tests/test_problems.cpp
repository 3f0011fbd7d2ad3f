#include <doctest.h>

#include <random>

#include "finchar/oracle.hpp"
#include "finchar/problems.hpp"

using namespace finchar;

namespace {

Poly P(const std::string& text, const FieldSpecPtr& spec, std::uint32_t n) {
    return parse_poly(text, spec, n);
}

}  // namespace

TEST_SUITE_BEGIN("problems");

TEST_CASE("feedback polynomial parsing and weight") {
    auto lfsr = LfsrSpec::from_feedback_exponents(40, {40, 21, 19, 2, 0});
    CHECK(lfsr.weight() == 5);
    CHECK(lfsr.taps[1] == 1);   // c_2
    CHECK(lfsr.taps[39] == 1);  // c_40
    CHECK(lfsr.taps[0] == 0);
    CHECK_THROWS_AS(LfsrSpec::from_feedback_exponents(40, {21, 19, 2, 0}),
                    std::invalid_argument);  // c_L = 0
    CHECK_THROWS_AS(LfsrSpec::from_feedback_exponents(4, {5, 4, 0}), std::invalid_argument);
}

TEST_CASE("state expressions unroll the recurrence") {
    ZddStore st;
    // taps (c1,c2,c3) = (0,1,1): s_i = s_{i-2} + s_{i-3}
    auto lfsr = LfsrSpec::from_feedback_exponents(3, {3, 2});
    auto exprs = lfsr_state_exprs(st, lfsr, 4);
    auto f2 = FieldSpec::make(2);
    CHECK(exprs[0] == st.from_poly(P("x1", f2, 3)));  // s_0 is the bare variable
    CHECK(exprs[2] == st.from_poly(P("x3", f2, 3)));
    CHECK(exprs[3] == st.from_poly(P("x2 + x1", f2, 3)));  // s_3 = s_1 + s_0
    CHECK(exprs[4] == st.from_poly(P("x3 + x2", f2, 3)));

    // one recurrence step has as many terms as there are taps
    auto heavy = LfsrSpec::from_feedback_exponents(5, {5, 4, 2, 0});
    auto hx = lfsr_state_exprs(st, heavy, 5);
    CHECK(st.term_count(hx[5]) == 3);
}

TEST_CASE("primitive feedback gives a full-period state sequence") {
    auto lfsr = LfsrSpec::from_feedback_exponents(4, {4, 1, 0});  // x^4+x+1, primitive
    std::vector<std::uint8_t> state{1, 0, 0, 0};
    auto seq = lfsr_sequence(lfsr, state, 64);
    // find the minimal period of the state vector sequence
    std::size_t period = 0;
    for (std::size_t p = 1; p <= 20; ++p) {
        bool ok = true;
        for (std::size_t i = 0; i + p + 4 <= seq.size(); ++i)
            if (seq[i] != seq[i + p]) {
                ok = false;
                break;
            }
        if (ok) {
            period = p;
            break;
        }
    }
    CHECK(period == 15);  // 2^L - 1
}

TEST_CASE("filter catalogue") {
    CHECK(canfil(1).monomials ==
          std::vector<std::vector<std::uint32_t>>{{1, 2, 3}, {1, 4}, {2, 5}, {3}});
    CHECK(canfil(5).arity == 5);
    CHECK(canfil(8).arity == 6);
    CHECK(canfil(10).arity == 7);
    // transcription checksum for the long filter
    auto f9 = canfil(9);
    CHECK(f9.arity == 7);
    CHECK(f9.monomials.size() == 39);
    int by_degree[5] = {0, 0, 0, 0, 0};
    for (const auto& m : f9.monomials) by_degree[m.size()]++;
    CHECK(by_degree[4] == 15);
    CHECK(by_degree[3] == 11);
    CHECK(by_degree[2] == 9);
    CHECK(by_degree[1] == 4);
    CHECK_THROWS_AS(canfil(0), std::invalid_argument);
    CHECK_THROWS_AS(canfil(11), std::invalid_argument);
}

TEST_CASE("filter generator equations") {
    NfgSpec spec;
    spec.lfsr = LfsrSpec::from_feedback_exponents(5, {5, 3, 0});
    spec.filter = canfil(1);
    spec.tap_positions = {0, 1, 2, 3, 4};
    spec.keybits = 1;

    // z_0 with trivial taps: x1x2x3 + x1x4 + x2x5 + x3 (+ z)
    auto f2 = FieldSpec::make(2);
    ProblemInstance inst = nfg_equations(spec, {0});
    REQUIRE(inst.polys.size() == 1);
    CHECK(inst.polys[0] == P("x1*x2*x3 + x1*x4 + x2*x5 + x3", f2, 5));

    // keystream example: key (1,1,1,0,0) gives z_0 = 1*1*1 + 1*0 + 1*0 + 1 = 0
    auto z = nfg_keystream(spec, {1, 1, 1, 0, 0}, 1);
    CHECK(z[0] == 0);

    // all-zero key and a filter without constant term gives all-zero keystream
    auto z0 = nfg_keystream(spec, {0, 0, 0, 0, 0}, 8);
    for (auto b : z0) CHECK(b == 0);
}

TEST_CASE("planted filter-generator instances satisfy their equations") {
    NfgSpec spec;
    spec.lfsr = LfsrSpec::from_feedback_exponents(17, {17, 3, 0});
    spec.filter = canfil(5);
    spec.tap_positions = {0, 1, 2, 3, 4, 5, 6};
    spec.keybits = 20;
    for (std::uint64_t seed : {1, 2, 3}) {
        ProblemInstance inst = make_nfg_instance(spec, seed);
        CHECK(inst.nvars == 17);
        CHECK(inst.polys.size() == 20);
        REQUIRE(inst.planted.has_value());
        // generation asserts this as well; recheck independently
        std::vector<FieldElement> pt(17);
        for (int i = 0; i < 17; ++i) pt[i] = {(*inst.planted)[i]};
        for (const auto& p : inst.polys) CHECK(p.eval(pt).code == 0);
        // degree is preserved by the linear substitution
        for (const auto& p : inst.polys) CHECK(p.total_degree() == 4);
    }
}

TEST_CASE("bivium instance shape") {
    for (std::uint32_t n : {1u, 10u}) {
        ProblemInstance inst = make_bivium_instance(n, 7);
        CHECK(inst.nvars == 2 * n + 177);
        CHECK(inst.polys.size() == 3 * n);
        for (const auto& p : inst.polys) CHECK(p.total_degree() <= 2);
    }
    ProblemInstance inst = make_bivium_instance(10, 1);
    CHECK(inst.nvars == 197);
    CHECK(inst.polys.size() == 30);
    CHECK_THROWS_AS(bivium_a_equations(0, {}), std::invalid_argument);

    // first clock output equation: z_1 + s_162 + s_177
    BiviumTrace tr = bivium_trace(std::vector<std::uint8_t>(177, 0), 1);
    ProblemInstance zero_inst = bivium_a_equations(1, tr.keystream);
    auto f2 = FieldSpec::make(2);
    CHECK(zero_inst.polys[0] == P("x162 + x177", f2, 179));
}

TEST_CASE("matmul systems") {
    auto f2 = FieldSpec::make(2);
    SUBCASE("n = 1") {
        MatMulProblem prob = matmul_equations(1);
        REQUIRE(prob.instance.polys.size() == 1);
        CHECK(prob.instance.polys[0] == P("x1*x2 + 1", f2, 2));
        REQUIRE(prob.check.size() == 1);
        CHECK(prob.check[0] == P("x1*x2 + 1", f2, 2));  // commutes for n = 1
    }
    SUBCASE("n = 2 counts invertible matrices") {
        MatMulProblem prob = matmul_equations(2);
        CHECK(prob.instance.nvars == 8);
        CHECK(prob.instance.polys.size() == 4);
        CHECK(prob.check.size() == 4);
        CHECK(brute_count(prob.instance.polys, 8, f2) == 6);  // |GL(2, F_2)|
    }
}

TEST_CASE("reduction checking") {
    auto f2 = FieldSpec::make(2);
    MatMulProblem prob = matmul_equations(2);
    Decomposition d = mfcs(prob.instance.polys, prob.instance.spec, prob.instance.nvars);
    CHECK(decomposition_count(d) == 6);
    CHECK(verify_reduction(prob.check, d));
    // transposed-product polynomials do not reduce against a wrong component set
    CHECK(verify_reduction({Poly::zero(f2, 8)}, d));
    ReductionFailure fail;
    CHECK(!verify_reduction({P("1", f2, 8)}, d, &fail));
    CHECK(fail.component == 0);
    CHECK(fail.poly == 0);

    Decomposition partial = d;
    partial.complete = false;
    CHECK_THROWS_AS(verify_reduction(prob.check, partial), std::invalid_argument);
}

TEST_SUITE_END();
