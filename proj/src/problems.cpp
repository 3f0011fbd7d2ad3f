#include "finchar/problems.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace finchar {

namespace {

FieldSpecPtr f2() {
    static FieldSpecPtr spec = FieldSpec::make(2);
    return spec;
}

std::vector<std::uint8_t> random_bits(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 gen(seed);
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) b = static_cast<std::uint8_t>(gen() & 1);
    return bits;
}

void check_planted(const ProblemInstance& inst) {
    if (!inst.planted) return;
    std::vector<FieldElement> point(inst.nvars);
    for (std::uint32_t i = 0; i < inst.nvars; ++i)
        point[i] = {static_cast<std::uint16_t>((*inst.planted)[i])};
    for (const auto& p : inst.polys)
        if (p.eval(point).code != 0)
            throw std::logic_error("planted assignment does not satisfy a generated equation");
}

}  // namespace

LfsrSpec LfsrSpec::from_feedback_exponents(std::uint32_t length,
                                           const std::vector<std::uint32_t>& exponents) {
    if (length == 0) throw std::invalid_argument("register length must be positive");
    LfsrSpec spec;
    spec.length = length;
    spec.taps.assign(length, 0);
    for (std::uint32_t e : exponents) {
        if (e == 0) continue;  // the constant term is always present
        if (e > length) throw std::invalid_argument("feedback exponent exceeds register length");
        spec.taps[e - 1] = 1;
    }
    if (spec.taps[length - 1] != 1)
        throw std::invalid_argument("feedback polynomial must have degree L (c_L != 0)");
    return spec;
}

std::uint32_t LfsrSpec::weight() const {
    std::uint32_t w = 1;  // constant term
    for (std::uint8_t c : taps) w += c;
    return w;
}

std::vector<BoolPoly> lfsr_state_exprs(ZddStore& store, const LfsrSpec& lfsr,
                                       std::uint32_t t_max) {
    std::vector<BoolPoly> exprs;
    exprs.reserve(t_max + 1);
    for (std::uint32_t i = 0; i <= t_max; ++i) {
        if (i < lfsr.length) {
            exprs.push_back(store.var(i + 1));
            continue;
        }
        BoolPoly acc = store.bot();
        for (std::uint32_t j = 1; j <= lfsr.length; ++j)
            if (lfsr.taps[j - 1]) acc = store.add(acc, exprs[i - j]);
        exprs.push_back(acc);
    }
    return exprs;
}

std::vector<std::uint8_t> lfsr_sequence(const LfsrSpec& lfsr,
                                        const std::vector<std::uint8_t>& state,
                                        std::size_t count) {
    if (state.size() != lfsr.length) throw std::invalid_argument("state size mismatch");
    std::vector<std::uint8_t> s = state;
    s.reserve(std::max<std::size_t>(count, s.size()));
    while (s.size() < count) {
        std::uint8_t next = 0;
        for (std::uint32_t j = 1; j <= lfsr.length; ++j)
            if (lfsr.taps[j - 1]) next ^= s[s.size() - j];
        s.push_back(next);
    }
    s.resize(count);
    return s;
}

FilterFunction canfil(int index) {
    auto f = [](std::string name, std::uint32_t arity,
                std::vector<std::vector<std::uint32_t>> monomials) {
        return FilterFunction{std::move(name), arity, std::move(monomials)};
    };
    switch (index) {
        case 1:
            return f("canfil1", 5, {{1, 2, 3}, {1, 4}, {2, 5}, {3}});
        case 2:
            return f("canfil2", 5,
                     {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 4}, {2, 5}, {3}, {4}, {5}});
        case 3:
            return f("canfil3", 5, {{2, 3, 4, 5}, {1, 2, 3}, {2, 4}, {3, 5}, {4}, {5}});
        case 4:
            return f("canfil4", 5, {{1, 2, 3}, {1, 4, 5}, {2, 3}, {1}});
        case 5:
            return f("canfil5", 5, {{2, 3, 4, 5}, {2, 3}, {1}});
        case 6:
            return f("canfil6", 5, {{1, 2, 3, 5}, {2, 3}, {4}});
        case 7:
            return f("canfil7", 5, {{1, 2, 3}, {2, 3, 4}, {2, 3, 5}, {1}, {2}, {3}});
        case 8:
            return f("canfil8", 6,
                     {{1, 2, 3}, {2, 3, 6}, {1, 2}, {3, 4}, {5, 6}, {4}, {5}});
        case 9:
            return f("canfil9", 7,
                     {{2, 4, 5, 7}, {2, 5, 6, 7}, {3, 4, 6, 7}, {1, 2, 4, 7}, {1, 3, 4, 7},
                      {1, 3, 6, 7}, {1, 4, 5, 7}, {1, 2, 5, 7}, {1, 2, 6, 7}, {1, 4, 6, 7},
                      {3, 4, 5, 7}, {2, 4, 6, 7}, {3, 5, 6, 7}, {1, 3, 5, 7}, {1, 2, 3, 7},
                      {3, 4, 5},    {3, 4, 7},    {3, 6, 7},    {5, 6, 7},    {2, 6, 7},
                      {1, 4, 6},    {1, 5, 7},    {2, 4, 5},    {2, 3, 7},    {1, 2, 7},
                      {1, 4, 5},    {6, 7},       {4, 6},       {4, 7},       {5, 7},
                      {2, 5},       {3, 4},       {3, 5},       {1, 4},       {2, 7},
                      {6},          {5},          {2},          {1}});
        case 10:
            return f("canfil10", 7,
                     {{1, 2, 3}, {2, 3, 4}, {2, 3, 5}, {6, 7}, {3}, {2}, {1}});
        default:
            throw std::invalid_argument("filter index must be 1..10");
    }
}

std::vector<std::uint8_t> nfg_keystream(const NfgSpec& spec,
                                        const std::vector<std::uint8_t>& key,
                                        std::size_t count) {
    const std::uint32_t m = spec.filter.arity;
    if (spec.tap_positions.size() < m)
        throw std::invalid_argument("tapping sequence shorter than the filter arity");
    std::uint32_t max_tap = 0;
    for (std::uint32_t j = 0; j < m; ++j) max_tap = std::max(max_tap, spec.tap_positions[j]);
    std::vector<std::uint8_t> seq = lfsr_sequence(spec.lfsr, key, count + max_tap);
    std::vector<std::uint8_t> z(count);
    for (std::size_t t = 0; t < count; ++t) {
        std::uint8_t bit = 0;
        for (const auto& mono : spec.filter.monomials) {
            std::uint8_t v = 1;
            for (std::uint32_t j : mono) v &= seq[t + spec.tap_positions[j - 1]];
            bit ^= v;
        }
        z[t] = bit;
    }
    return z;
}

ProblemInstance nfg_equations(const NfgSpec& spec, const std::vector<std::uint8_t>& keystream) {
    const std::uint32_t m = spec.filter.arity;
    const std::uint32_t L = spec.lfsr.length;
    if (m > L) throw std::invalid_argument("filter arity exceeds register length");
    if (spec.tap_positions.size() < m)
        throw std::invalid_argument("tapping sequence shorter than the filter arity");
    if (keystream.size() != spec.keybits)
        throw std::invalid_argument("keystream length must equal the equation count");
    std::uint32_t max_tap = 0;
    for (std::uint32_t j = 0; j < m; ++j) {
        if (spec.tap_positions[j] >= L) throw std::invalid_argument("tap position out of range");
        max_tap = std::max(max_tap, spec.tap_positions[j]);
    }

    ZddStore store;
    auto exprs = lfsr_state_exprs(store, spec.lfsr, spec.keybits + max_tap);

    ProblemInstance inst;
    inst.spec = f2();
    inst.nvars = L;
    inst.family = "nfg";
    for (std::uint32_t t = 0; t < spec.keybits; ++t) {
        BoolPoly acc = keystream[t] ? store.top() : store.bot();
        for (const auto& mono : spec.filter.monomials) {
            BoolPoly prod = store.top();
            for (std::uint32_t j : mono)
                prod = store.mul(prod, exprs[t + spec.tap_positions[j - 1]]);
            acc = store.add(acc, prod);
        }
        inst.polys.push_back(store.to_poly(acc, inst.spec, L));
    }
    return inst;
}

ProblemInstance make_nfg_instance(const NfgSpec& spec, std::uint64_t seed) {
    std::vector<std::uint8_t> key = random_bits(seed, spec.lfsr.length);
    std::vector<std::uint8_t> z = nfg_keystream(spec, key, spec.keybits);
    ProblemInstance inst = nfg_equations(spec, z);
    inst.planted = std::move(key);
    inst.seed = seed;
    check_planted(inst);
    return inst;
}

// ---------------------------------------------------------------------------
// Bivium-A

namespace {
constexpr std::uint32_t kBiviumState = 177;

struct BiviumTaps {
    // 1-based state positions used by the round function
    static constexpr std::uint32_t out1 = 162, out2 = 177;
    static constexpr std::uint32_t f1a = 66, f1b = 93, f1m1 = 91, f1m2 = 92, f1x = 171;
    static constexpr std::uint32_t f2a = 162, f2b = 177, f2m1 = 175, f2m2 = 176, f2x = 69;
};
}  // namespace

BiviumTrace bivium_trace(const std::vector<std::uint8_t>& state, std::uint32_t clocks) {
    if (state.size() != kBiviumState) throw std::invalid_argument("state must have 177 bits");
    std::vector<std::uint8_t> s(state.begin(), state.end());
    auto at = [&](std::uint32_t i) { return s[i - 1]; };
    BiviumTrace trace;
    for (std::uint32_t i = 0; i < clocks; ++i) {
        std::uint8_t z = at(BiviumTaps::out1) ^ at(BiviumTaps::out2);
        std::uint8_t t1 = static_cast<std::uint8_t>(at(BiviumTaps::f1a) ^ at(BiviumTaps::f1b) ^
                                                    (at(BiviumTaps::f1m1) & at(BiviumTaps::f1m2)) ^
                                                    at(BiviumTaps::f1x));
        std::uint8_t t2 = static_cast<std::uint8_t>(at(BiviumTaps::f2a) ^ at(BiviumTaps::f2b) ^
                                                    (at(BiviumTaps::f2m1) & at(BiviumTaps::f2m2)) ^
                                                    at(BiviumTaps::f2x));
        trace.keystream.push_back(z);
        trace.feedback_values.push_back(t1);
        trace.feedback_values.push_back(t2);
        // (s_1..s_93) <- (t2, s_1..s_92); (s_94..s_177) <- (t1, s_94..s_176)
        std::rotate(s.begin(), s.begin() + 92, s.begin() + 93);
        std::rotate(s.begin() + 93, s.begin() + 176, s.end());
        s[0] = t2;
        s[93] = t1;
    }
    return trace;
}

ProblemInstance bivium_a_equations(std::uint32_t clocks,
                                   const std::vector<std::uint8_t>& keystream) {
    if (clocks < 1) throw std::invalid_argument("clock count must be positive");
    if (keystream.size() != clocks)
        throw std::invalid_argument("keystream length must equal the clock count");

    ProblemInstance inst;
    inst.spec = f2();
    inst.nvars = kBiviumState + 2 * clocks;
    inst.family = "bivium-a";

    auto var_term = [&](std::uint32_t v) {
        Term t;
        t.coef = inst.spec->one();
        t.mono.factors.push_back({static_cast<std::uint16_t>(v), 1});
        return t;
    };
    auto const_term = [&] {
        Term t;
        t.coef = inst.spec->one();
        return t;
    };

    // symbolic state: every cell is a single variable
    std::vector<std::uint32_t> s(kBiviumState);
    for (std::uint32_t i = 0; i < kBiviumState; ++i) s[i] = i + 1;
    auto at = [&](std::uint32_t i) { return s[i - 1]; };

    for (std::uint32_t i = 0; i < clocks; ++i) {
        const std::uint32_t v_t1 = kBiviumState + 2 * i + 1;
        const std::uint32_t v_t2 = kBiviumState + 2 * i + 2;

        // output equation z_i + s_162 + s_177
        std::vector<Term> out;
        if (keystream[i]) out.push_back(const_term());
        out.push_back(var_term(at(BiviumTaps::out1)));
        out.push_back(var_term(at(BiviumTaps::out2)));
        inst.polys.push_back(Poly::from_terms(inst.spec, inst.nvars, std::move(out)));

        // register-update equations keeping the degree at 2
        std::vector<Term> f1;
        f1.push_back(var_term(v_t1));
        f1.push_back(var_term(at(BiviumTaps::f1a)));
        f1.push_back(var_term(at(BiviumTaps::f1b)));
        {
            Term t;
            t.coef = inst.spec->one();
            t.mono.factors.push_back({static_cast<std::uint16_t>(at(BiviumTaps::f1m1)), 1});
            t.mono.factors.push_back({static_cast<std::uint16_t>(at(BiviumTaps::f1m2)), 1});
            f1.push_back(std::move(t));
        }
        f1.push_back(var_term(at(BiviumTaps::f1x)));
        inst.polys.push_back(Poly::from_terms(inst.spec, inst.nvars, std::move(f1)));

        std::vector<Term> f2t;
        f2t.push_back(var_term(v_t2));
        f2t.push_back(var_term(at(BiviumTaps::f2a)));
        f2t.push_back(var_term(at(BiviumTaps::f2b)));
        {
            Term t;
            t.coef = inst.spec->one();
            t.mono.factors.push_back({static_cast<std::uint16_t>(at(BiviumTaps::f2m1)), 1});
            t.mono.factors.push_back({static_cast<std::uint16_t>(at(BiviumTaps::f2m2)), 1});
            f2t.push_back(std::move(t));
        }
        f2t.push_back(var_term(at(BiviumTaps::f2x)));
        inst.polys.push_back(Poly::from_terms(inst.spec, inst.nvars, std::move(f2t)));

        // shift, feeding the auxiliary variables in
        std::rotate(s.begin(), s.begin() + 92, s.begin() + 93);
        std::rotate(s.begin() + 93, s.begin() + 176, s.end());
        s[0] = v_t2;
        s[93] = v_t1;
    }
    return inst;
}

ProblemInstance make_bivium_instance(std::uint32_t clocks, std::uint64_t seed) {
    std::vector<std::uint8_t> state = random_bits(seed, kBiviumState);
    BiviumTrace trace = bivium_trace(state, clocks);
    ProblemInstance inst = bivium_a_equations(clocks, trace.keystream);
    std::vector<std::uint8_t> assignment = state;
    for (std::uint32_t i = 0; i < clocks; ++i) {
        assignment.push_back(trace.feedback_values[2 * i]);      // t1
        assignment.push_back(trace.feedback_values[2 * i + 1]);  // t2
    }
    inst.planted = std::move(assignment);
    inst.seed = seed;
    check_planted(inst);
    return inst;
}

// ---------------------------------------------------------------------------
// Boolean matrix multiplication

MatMulProblem matmul_equations(std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("matrix size must be positive");
    MatMulProblem prob;
    prob.instance.spec = f2();
    prob.instance.nvars = 2 * n * n;
    prob.instance.family = "matmul";
    auto a_var = [&](std::uint32_t i, std::uint32_t j) { return (i - 1) * n + j; };
    auto b_var = [&](std::uint32_t i, std::uint32_t j) { return n * n + (i - 1) * n + j; };

    auto entry_poly = [&](bool left_a, std::uint32_t i, std::uint32_t j) {
        std::vector<Term> terms;
        for (std::uint32_t k = 1; k <= n; ++k) {
            Term t;
            t.coef = prob.instance.spec->one();
            std::uint32_t u = left_a ? a_var(i, k) : b_var(i, k);
            std::uint32_t v = left_a ? b_var(k, j) : a_var(k, j);
            t.mono.factors.push_back({static_cast<std::uint16_t>(u), 1});
            t.mono.factors.push_back({static_cast<std::uint16_t>(v), 1});
            terms.push_back(std::move(t));
        }
        if (i == j) {
            Term t;
            t.coef = prob.instance.spec->one();
            terms.push_back(std::move(t));
        }
        return Poly::from_terms(prob.instance.spec, prob.instance.nvars, std::move(terms));
    };

    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j) prob.instance.polys.push_back(entry_poly(true, i, j));
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j) prob.check.push_back(entry_poly(false, i, j));
    return prob;
}

// ---------------------------------------------------------------------------

bool verify_reduction(const std::vector<Poly>& check, const Decomposition& d,
                      ReductionFailure* failure) {
    if (!d.complete) throw std::invalid_argument("verification requires a complete decomposition");
    if (check.empty()) return true;
    const auto& spec = check.front().spec();

    if (spec->q() == 2) {
        // shared store so components with common polynomials share structure
        ZddStore store;
        std::vector<BoolPoly> checks;
        checks.reserve(check.size());
        for (const auto& p : check) checks.push_back(store.from_poly(p));
        for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
            const auto& comp = d.components[ci];
            std::vector<std::pair<std::uint32_t, BoolPoly>> rules;  // class -> tail
            for (const auto& p : comp.polys()) {
                BoolPoly bp = store.from_poly(p);
                auto s = store.split(bp);
                if (s.initial.id != ZddStore::kTop)
                    throw std::invalid_argument("verification expects monic components");
                rules.push_back({s.cls, s.tail});
            }
            for (std::size_t pi = 0; pi < checks.size(); ++pi) {
                BoolPoly r = checks[pi];
                for (std::size_t k = rules.size(); k-- > 0;) {
                    auto cof = store.cofactors(r, rules[k].first);
                    r = store.add(cof.without, store.mul(cof.with, rules[k].second));
                }
                if (r.id != ZddStore::kBot) {
                    if (failure) *failure = {ci, pi};
                    return false;
                }
            }
        }
        return true;
    }

    for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
        for (std::size_t pi = 0; pi < check.size(); ++pi) {
            if (!prem_set(check[pi], d.components[ci]).is_zero()) {
                if (failure) *failure = {ci, pi};
                return false;
            }
        }
    }
    return true;
}

}  // namespace finchar
