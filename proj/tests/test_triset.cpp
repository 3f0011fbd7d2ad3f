#include <doctest.h>

#include "finchar/triset.hpp"
#include "testutil.hpp"

using namespace finchar;

namespace {

Poly P(const std::string& text, const FieldSpecPtr& spec, std::uint32_t n) {
    return parse_poly(text, spec, n);
}

TriangularSet TS(const FieldSpecPtr& spec, std::uint32_t n,
                 const std::vector<std::string>& texts) {
    std::vector<Poly> polys;
    for (const auto& t : texts) polys.push_back(P(t, spec, n));
    return TriangularSet::make(spec, n, std::move(polys));
}

}  // namespace

TEST_SUITE_BEGIN("triset");

TEST_CASE("construction validates the triangular shape") {
    auto f3 = FieldSpec::make(3);
    CHECK_NOTHROW(TS(f3, 3, {"x3^2 + 2*x1*x2", "x1^2 + 2", "x2 + 2*x1"}));  // any order
    CHECK_THROWS_AS(TS(f3, 3, {"x1", "x1 + 1"}), std::invalid_argument);    // repeated class
    CHECK_THROWS_AS(TS(f3, 3, {"1"}), std::invalid_argument);               // constant
    CHECK_NOTHROW(TriangularSet::make(f3, 3, {}));                          // whole space
}

TEST_CASE("monic predicate") {
    auto f3 = FieldSpec::make(3);
    CHECK(ts_is_monic(TS(f3, 3, {"x1^2 + 2", "x2 + 2*x1", "x3^2 + 2*x1*x2"})));
    CHECK(!ts_is_monic(TS(f3, 2, {"x1*x2"})));
    CHECK(!ts_is_monic(TS(f3, 1, {"2*x1 + 1"})));
}

TEST_CASE("proper predicate") {
    auto f3 = FieldSpec::make(3);
    CHECK(!ts_is_proper(TS(f3, 1, {"x1^2 + 1"})));
    CHECK(ts_is_proper(TS(f3, 3, {"x1^2 + 2", "x2 + 2*x1", "x3^2 + 2*x1*x2"})));
    auto f2 = FieldSpec::make(2);
    CHECK(ts_is_proper(TS(f2, 3, {"x1", "x3 + x2*x1 + x2"})));  // monic over q = 2
    CHECK(ts_is_proper(TriangularSet::make(f3, 2, {})));
}

TEST_CASE("degree, dimension and count") {
    auto f3 = FieldSpec::make(3);
    auto ex = TS(f3, 3, {"x1^2 + 2", "x2 + 2*x1", "x3^2 + 2*x1*x2"});
    CHECK(ts_degree(ex) == 4);
    CHECK(ts_dim(ex) == 0);
    CHECK(ts_count(ex) == 4);

    auto f2 = FieldSpec::make(2);
    auto line = TS(f2, 2, {"x1 + 1"});
    CHECK(ts_degree(line) == 1);
    CHECK(ts_dim(line) == 1);
    CHECK(ts_count(line) == 2);

    auto pair = TS(f3, 3, {"x1^2 + 2", "x2 + 2*x1"});
    CHECK(ts_count(pair) == 6);
    CHECK(brute_count(pair.polys(), 3, f3) == 6);

    CHECK(ts_count(TriangularSet::make(f3, 3, {})) == 27);
    CHECK_THROWS_AS(ts_count(TS(f3, 1, {"x1^2 + 1"})), std::invalid_argument);
}

TEST_CASE("enumeration sweeps parameters and cascades roots") {
    auto f3 = FieldSpec::make(3);
    auto ex = TS(f3, 3, {"x1^2 + 2", "x2 + 2*x1", "x3^2 + 2*x1*x2"});
    auto pts = testutil::sorted_points(ts_enumerate(ex, 100));
    REQUIRE(pts.size() == 4);
    auto code = [](const Point& p) {
        return std::vector<int>{p[0].code, p[1].code, p[2].code};
    };
    CHECK(code(pts[0]) == std::vector<int>{1, 1, 1});
    CHECK(code(pts[1]) == std::vector<int>{1, 1, 2});
    CHECK(code(pts[2]) == std::vector<int>{2, 2, 1});
    CHECK(code(pts[3]) == std::vector<int>{2, 2, 2});

    auto f2 = FieldSpec::make(2);
    auto single = ts_enumerate(TS(f2, 1, {"x1 + 1"}), 10);
    REQUIRE(single.size() == 1);
    CHECK(single[0][0].code == 1);

    auto origin = ts_enumerate(TS(f2, 2, {"x1", "x2 + x1"}), 10);
    REQUIRE(origin.size() == 1);
    CHECK(origin[0][0].code == 0);
    CHECK(origin[0][1].code == 0);

    CHECK_THROWS_AS(ts_enumerate(ex, 3), std::invalid_argument);
}

TEST_CASE("monic proper characterizes the exact solution count") {
    // both directions, against brute force
    for (std::uint32_t q : {2u, 3u}) {
        auto spec = FieldSpec::make(q);
        std::mt19937 gen(100 + q);
        for (int i = 0; i < 60; ++i) {
            const std::uint32_t n = 4;
            TriangularSet a = testutil::random_monic_set(gen, spec, n);
            BigInt expect = ts_degree(a) * boost::multiprecision::pow(BigInt(q), ts_dim(a));
            BigInt actual = brute_count(a.polys(), n, spec);
            CHECK(ts_is_proper(a) == (actual == expect));
        }
    }
}

TEST_CASE("regular chains") {
    auto f3 = FieldSpec::make(3);
    // both initials have nonzero resultants but their product vanishes
    CHECK(!ts_is_regular(TS(f3, 3, {"x1*x2", "x1^2*x3 + 2*x3"})));
    CHECK(ts_is_regular(TS(f3, 3, {"x1^2 + 2", "x2 + 2*x1", "x3^2 + 2*x1*x2"})));
    CHECK(!ts_is_regular(TS(f3, 2, {"x1", "x1*x2"})));
}

TEST_CASE("resultants") {
    auto f2 = FieldSpec::make(2);
    CHECK(res_set(P("x1", f2, 1), TS(f2, 1, {"x1 + 1"})) == P("1", f2, 1));
    auto f3 = FieldSpec::make(3);
    Poly p = P("x2^2 + x1", f3, 2);
    CHECK(res_set(p, TriangularSet::make(f3, 2, {})) == p);
    CHECK(res_set(P("x2", f3, 2), TS(f3, 2, {"x1*x2"})).is_zero());
    // deg-0 conventions
    CHECK(resultant(P("x1", f3, 2), P("x2 + 1", f3, 2), 2) == P("x1", f3, 2));
}

TEST_CASE("regular witness specializations") {
    auto f3 = FieldSpec::make(3);
    auto monic = TS(f3, 3, {"x2 + 2*x1", "x3^2 + 2"});
    auto w = ts_regular_witness(monic);
    REQUIRE(w.has_value());
    CHECK(w->size() == 1);       // one parameter, x1
    CHECK((*w)[0].code == 0);    // first value already works

    auto chain = TS(f3, 2, {"x1*x2"});
    auto w2 = ts_regular_witness(chain);
    REQUIRE(w2.has_value());
    CHECK((*w2)[0].code == 1);  // resultant product is x1
    // specializing x1 = 1 must leave exactly deg(A) = 1 solution of x2
    std::vector<std::optional<FieldElement>> assign(2);
    assign[0] = FieldElement{1};
    Poly special = chain.polys()[0].eval_partial(assign);
    int roots = 0;
    for (std::uint16_t v = 0; v < 3; ++v) {
        std::vector<FieldElement> pt{{1}, {v}};
        if (chain.polys()[0].eval(pt).code == 0) ++roots;
    }
    CHECK(roots == 1);
    CHECK(special.cls() == 2);

    auto dim0 = TS(f3, 2, {"x1 + 1", "x2^2 + 2"});
    auto w3 = ts_regular_witness(dim0);
    REQUIRE(w3.has_value());
    CHECK(w3->empty());  // vacuous witness

    CHECK_THROWS_AS(ts_regular_witness(TS(f3, 2, {"x1", "x1*x2"})), std::invalid_argument);
}

TEST_CASE("saturation generators at zero-set level") {
    auto f3 = FieldSpec::make(3);
    // A1 = (x1-1)x2, A2 = (x1+1)x3
    auto a = TS(f3, 3, {"x1*x2 + 2*x2", "x1*x3 + x3"});
    auto gens = ts_saturation_generators(a);
    REQUIRE(gens.size() == 3);
    CHECK(gens[2] == P("2*x1^2", f3, 3));  // ((x1^2-1)^2 - 1 normalized
    auto zeros = brute_zero_set(gens, 3, f3);
    REQUIRE(zeros.size() == 1);
    CHECK(zeros[0] == Point{{0}, {0}, {0}});

    // monic set: the extra generator normalizes to 0 and is dropped
    auto monic = TS(f3, 2, {"x1^2 + 2", "x2 + x1"});
    CHECK(ts_saturation_generators(monic).size() == 2);

    // hzero(generators) = hzero(A) minus hzero(I_A)
    auto single = TS(f3, 3, {"x1*x2"});
    auto gs = ts_saturation_generators(single);
    auto zg = testutil::sorted_points(brute_zero_set(gs, 3, f3));
    std::vector<Point> expect;
    for (const auto& pt : brute_zero_set(single.polys(), 3, f3))
        if (pt[0].code != 0) expect.push_back(pt);  // I_A = x1
    CHECK(zg == testutil::sorted_points(std::move(expect)));
}

TEST_CASE("pseudo-remainder against a whole set") {
    auto f3 = FieldSpec::make(3);
    auto a = TS(f3, 3, {"x1^2 + 2", "x2 + 2*x1", "x3^2 + 2*x1*x2"});
    // x3 * A3 lifted: prem(x3^3 - x1x2x3, A) = 0 is the proper condition
    Poly lifted = a.polys()[2].shifted(3, 1);
    CHECK(prem_set(lifted, a).is_zero());

    // remainder formula for prem against a set, by expansion
    std::mt19937 gen(2024);
    for (int i = 0; i < 40; ++i) {
        TriangularSet ts = testutil::random_monic_set(gen, f3, 3);
        Poly q = testutil::random_poly(gen, f3, 3, 5, 4);
        PremSetRecord rec = prem_set_with_record(q, ts);
        Poly lhs = q;
        for (std::size_t j = 0; j < ts.size(); ++j)
            lhs = mul(lhs, pow_repeated(ts.polys()[j].initial(), rec.powers[j]));
        Poly rhs = rec.remainder;
        for (std::size_t j = 0; j < ts.size(); ++j)
            rhs = rhs + mul(rec.quotients[j], ts.polys()[j]);
        CHECK(lhs == rhs);
        for (const auto& member : ts.polys())
            CHECK(rec.remainder.degree_in(member.cls()) < member.deg());
    }
}

TEST_CASE("triangular set ordering") {
    auto f3 = FieldSpec::make(3);
    auto low = TS(f3, 3, {"x1", "x2"});
    auto high = TS(f3, 3, {"x1^2 + 2", "x2"});
    CHECK(ts_compare(low, high) == TriSetOrder::lower);
    CHECK(ts_compare(high, low) == TriSetOrder::higher);
    CHECK(ts_compare(low, TS(f3, 3, {"x1", "x2 + 1"})) == TriSetOrder::same);
    // longer set extending an equal-ranked prefix is lower
    CHECK(ts_compare(TS(f3, 3, {"x1", "x2", "x3"}), low) == TriSetOrder::lower);
}

TEST_SUITE_END();
