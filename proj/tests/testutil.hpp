#ifndef FINCHAR_TESTUTIL_HPP
#define FINCHAR_TESTUTIL_HPP

#include <random>
#include <vector>

#include "finchar/oracle.hpp"
#include "finchar/poly.hpp"
#include "finchar/triset.hpp"

namespace testutil {

inline finchar::Poly random_poly(std::mt19937& gen, const finchar::FieldSpecPtr& spec,
                                 std::uint32_t nvars, int max_terms, int max_tdeg) {
    std::uniform_int_distribution<int> term_count(0, max_terms);
    std::uniform_int_distribution<int> tdeg(0, max_tdeg);
    std::uniform_int_distribution<std::uint32_t> var(1, nvars);
    std::uniform_int_distribution<std::uint32_t> coef(1, spec->q() - 1);
    std::vector<finchar::Term> terms;
    const int n_terms = term_count(gen);
    for (int t = 0; t < n_terms; ++t) {
        finchar::Term term;
        term.coef = {static_cast<std::uint16_t>(coef(gen))};
        const int d = tdeg(gen);
        for (int i = 0; i < d; ++i)
            term.mono.factors.push_back({static_cast<std::uint16_t>(var(gen)), 1});
        terms.push_back(std::move(term));
    }
    return finchar::Poly::from_terms(spec, nvars, std::move(terms));
}

inline std::vector<finchar::Poly> random_system(std::mt19937& gen,
                                                const finchar::FieldSpecPtr& spec,
                                                std::uint32_t nvars, int size, int max_terms,
                                                int max_tdeg) {
    std::vector<finchar::Poly> ps;
    for (int i = 0; i < size; ++i) ps.push_back(random_poly(gen, spec, nvars, max_terms, max_tdeg));
    return ps;
}

inline std::vector<finchar::Point> sorted_points(std::vector<finchar::Point> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const finchar::Point& a, const finchar::Point& b) {
                  for (std::size_t i = 0; i < a.size(); ++i)
                      if (a[i].code != b[i].code) return a[i].code < b[i].code;
                  return false;
              });
    return pts;
}

// x_c^d + U with deg(U, x_c) < d and U over x_1..x_c.
inline finchar::Poly random_monic_member(std::mt19937& gen, const finchar::FieldSpecPtr& spec,
                                         std::uint32_t nvars, std::uint32_t c, std::uint32_t d) {
    std::vector<finchar::Term> terms;
    finchar::Term lead;
    lead.coef = spec->one();
    lead.mono.factors.push_back({static_cast<std::uint16_t>(c), static_cast<std::uint16_t>(d)});
    terms.push_back(std::move(lead));
    std::uniform_int_distribution<int> extra_count(0, 3);
    std::uniform_int_distribution<std::uint32_t> coef(1, spec->q() - 1);
    const int extras = extra_count(gen);
    for (int t = 0; t < extras; ++t) {
        finchar::Term term;
        term.coef = {static_cast<std::uint16_t>(coef(gen))};
        for (std::uint32_t v = 1; v <= c; ++v) {
            if (gen() % 2 == 0) continue;
            std::uint32_t max_e = v == c ? d - 1 : spec->q() - 1;
            if (max_e == 0) continue;
            std::uniform_int_distribution<std::uint32_t> exp(1, max_e);
            term.mono.factors.push_back(
                {static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(exp(gen))});
        }
        terms.push_back(std::move(term));
    }
    return finchar::Poly::from_terms(spec, nvars, std::move(terms));
}

inline finchar::TriangularSet random_monic_set(std::mt19937& gen,
                                               const finchar::FieldSpecPtr& spec,
                                               std::uint32_t nvars) {
    std::vector<finchar::Poly> polys;
    std::uniform_int_distribution<std::uint32_t> deg(1, spec->q() - 1);
    for (std::uint32_t c = 1; c <= nvars; ++c) {
        if (gen() % 2 == 0) continue;
        polys.push_back(random_monic_member(gen, spec, nvars, c, deg(gen)));
    }
    if (polys.empty()) {
        std::uniform_int_distribution<std::uint32_t> cls(1, nvars);
        polys.push_back(random_monic_member(gen, spec, nvars, cls(gen), deg(gen)));
    }
    return finchar::TriangularSet::make(spec, nvars, std::move(polys));
}

}  // namespace testutil

#endif
