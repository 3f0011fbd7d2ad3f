#include <doctest.h>

#include "finchar/oracle.hpp"
#include "finchar/poly.hpp"
#include "testutil.hpp"

using namespace finchar;

namespace {

Poly P(const std::string& text, const FieldSpecPtr& spec, std::uint32_t n) {
    return parse_poly(text, spec, n);
}

}  // namespace

TEST_SUITE_BEGIN("poly");

TEST_CASE("normalization applies x^q = x") {
    auto f3 = FieldSpec::make(3);
    CHECK(P("x1^3", f3, 1) == P("x1", f3, 1));
    CHECK(P("x1^3 + 2*x1", f3, 1).is_zero());  // x1^3 - x1
    auto f2 = FieldSpec::make(2);
    CHECK(P("x1^2 + x1 + 1", f2, 1) == P("1", f2, 1));
}

TEST_CASE("ring operations") {
    auto f3 = FieldSpec::make(3);
    CHECK(mul(P("x1 + 1", f3, 1), P("x1 + 2", f3, 1)) == P("x1^2 + 2", f3, 1));
    CHECK(mul(P("x1", f3, 1), P("x1^2", f3, 1)) == P("x1", f3, 1));
    auto f2 = FieldSpec::make(2);
    CHECK(mul(P("x1 + 1", f2, 1), P("x1 + 1", f2, 1)) == P("x1 + 1", f2, 1));

    MulCounter ctr;
    mul(P("x1 + 1", f3, 1), P("x1 + 2", f3, 1), &ctr);
    mul(P("2", f3, 1), P("x1 + 2", f3, 1), &ctr);  // constant scaling is free
    CHECK(ctr.count == 1);
}

TEST_CASE("idempotent powers: P^q = P") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto spec = q == 4 ? FieldSpec::make(2, 2) : FieldSpec::make(q);
        std::mt19937 gen(17 * q);
        for (int i = 0; i < 125; ++i) {
            Poly p = testutil::random_poly(gen, spec, 4, 5, 4);
            CHECK(pow_repeated(p, q) == p);
        }
    }
}

TEST_CASE("rank, initial and tail") {
    auto f3 = FieldSpec::make(3);
    Poly p = P("x1*x3^2 + x2", f3, 3);
    CHECK(p.rank() == Rank{3, 2});
    CHECK(p.initial() == P("x1", f3, 3));
    CHECK(p.tail() == P("x2", f3, 3));

    auto f2 = FieldSpec::make(2);
    Poly q = P("x1*x2 + 1", f2, 2);
    CHECK(q.initial() == P("x1", f2, 2));
    CHECK(q.tail() == P("1", f2, 2));

    Poly r = P("2*x2^2 + x1", f3, 2);
    CHECK(r.initial() == P("2", f3, 2));
    CHECK(r.tail() == P("x1", f3, 2));

    CHECK_THROWS_AS(P("1", f3, 2).initial(), std::invalid_argument);
    CHECK_THROWS_AS(P("2", f3, 2).tail(), std::invalid_argument);
}

TEST_CASE("rank comparison") {
    auto f3 = FieldSpec::make(3);
    CHECK(compare_rank(P("x3", f3, 3), P("x2^2", f3, 3)) == RankOrder::higher);
    CHECK(compare_rank(P("x2^2", f3, 3), P("x2", f3, 3)) == RankOrder::higher);
    CHECK(compare_rank(P("x2 + 1", f3, 3), P("x2 + x1", f3, 3)) == RankOrder::same);
    CHECK(compare_rank(P("x1", f3, 3), P("x2", f3, 3)) == RankOrder::lower);
}

TEST_CASE("pseudo-remainder on the worked examples") {
    auto f2 = FieldSpec::make(2);
    CHECK(prem(P("x1*x2 + 1", f2, 2), P("x2 + x1", f2, 2)) == P("x1 + 1", f2, 2));
    auto f3 = FieldSpec::make(3);
    CHECK(prem(P("x2^2 + x1", f3, 2), P("x2 + x1", f3, 2)) == P("x1^2 + x1", f3, 2));
    Poly p = P("x1*x3^2 + x2", f3, 3);
    CHECK(prem(p, p).is_zero());
    CHECK_THROWS_AS(prem(P("x1", f3, 2), P("2", f3, 2)), std::invalid_argument);
}

TEST_CASE("pseudo-remainder properties on random pairs") {
    // remainder formula I^s Q = B P + R checked by expansion, plus
    // reducedness of the result
    for (std::uint32_t q : {2u, 3u}) {
        auto spec = FieldSpec::make(q);
        std::mt19937 gen(91 + q);
        int done = 0;
        while (done < 60) {
            const std::uint32_t n = 3;
            Poly divisor = testutil::random_poly(gen, spec, n, 4, 3);
            if (divisor.cls() == 0) continue;
            Poly dividend = testutil::random_poly(gen, spec, n, 5, 4);
            PremRecord rec;
            Poly r = prem(dividend, divisor, nullptr, &rec);
            CHECK(r.degree_in(divisor.cls()) < divisor.deg());
            Poly lhs = mul(pow_repeated(divisor.initial(), rec.scale_power), dividend);
            Poly rhs = mul(rec.quotient, divisor) + r;
            CHECK(lhs == rhs);
            ++done;
        }
    }
}

TEST_CASE("zero-set characterizations of constants") {
    // hzero(P) is everything iff P = 0, empty iff P^(q-1) - 1 = 0
    for (std::uint32_t q : {2u, 3u}) {
        auto spec = FieldSpec::make(q);
        std::mt19937 gen(5 + q);
        for (int i = 0; i < 40; ++i) {
            const std::uint32_t n = 3;
            Poly p = testutil::random_poly(gen, spec, n, 4, 3);
            auto zeros = brute_zero_set({p}, n, spec);
            std::uint64_t qn = 1;
            for (std::uint32_t v = 0; v < n; ++v) qn *= q;
            CHECK((zeros.size() == qn) == p.is_zero());
            Poly indicator = pow_repeated(p, q - 1) - Poly::constant(spec, n, spec->one());
            CHECK(zeros.empty() == indicator.is_zero());
        }
    }
}

TEST_CASE("zero-set identities for products and splits") {
    auto spec = FieldSpec::make(3);
    std::mt19937 gen(1234);
    const std::uint32_t n = 3;
    auto same_points = [](std::vector<Point> a, std::vector<Point> b) {
        return testutil::sorted_points(std::move(a)) == testutil::sorted_points(std::move(b));
    };
    for (int i = 0; i < 30; ++i) {
        Poly u = testutil::random_poly(gen, spec, n, 3, 2);
        Poly v = testutil::random_poly(gen, spec, n, 3, 2);
        auto zu = brute_zero_set({u}, n, spec);
        auto zv = brute_zero_set({v}, n, spec);
        auto zuv = brute_zero_set({mul(u, v)}, n, spec);
        std::vector<Point> unioned = zu;
        unioned.insert(unioned.end(), zv.begin(), zv.end());
        unioned = testutil::sorted_points(std::move(unioned));
        unioned.erase(std::unique(unioned.begin(), unioned.end()), unioned.end());
        CHECK(same_points(zuv, unioned));

        // hzero(PS) = hzero(PS + {U}) disjoint-union hzero(PS + {U^(q-1)-1})
        std::vector<Poly> ps{testutil::random_poly(gen, spec, n, 3, 2)};
        Poly cofactor = pow_repeated(u, spec->q() - 1) - Poly::constant(spec, n, spec->one());
        auto z_ps = brute_zero_set(ps, n, spec);
        std::vector<Poly> with_u = ps;
        with_u.push_back(u);
        std::vector<Poly> with_c = ps;
        with_c.push_back(cofactor);
        auto z1 = brute_zero_set(with_u, n, spec);
        auto z2 = brute_zero_set(with_c, n, spec);
        CHECK(z_ps.size() == z1.size() + z2.size());
        std::vector<Point> merged = z1;
        merged.insert(merged.end(), z2.begin(), z2.end());
        CHECK(same_points(merged, z_ps));
    }
}

TEST_CASE("evaluation") {
    auto f3 = FieldSpec::make(3);
    Poly p = P("x1*x2*x3^2 + 2", f3, 3);  // x1 x2 x3^2 - 1
    std::vector<FieldElement> ones{{1}, {1}, {1}};
    CHECK(p.eval(ones).code == 0);
    Poly c = P("x1^2 + 1", f3, 1);
    std::vector<FieldElement> one{{1}};
    CHECK(c.eval(one).code == 2);
    std::vector<FieldElement> zeros{{0}, {0}, {0}};
    CHECK(P("x1*x2 + 2", f3, 3).eval(zeros).code == 2);
    CHECK_THROWS_AS(p.eval(one), std::invalid_argument);
}

TEST_CASE("text grammar round trip") {
    auto f3 = FieldSpec::make(3);
    Poly p = P("2*x2^2 + x1*x3 + 1", f3, 3);
    // canonical order is graded lex with x3 > x2 > x1
    CHECK(p.to_string() == "x1*x3 + 2*x2^2 + 1");
    CHECK(parse_poly(p.to_string(), f3, 3) == p);

    // minus signs and repeated factors are accepted on input
    CHECK(P("x1 - 1", f3, 1) == P("x1 + 2", f3, 1));
    CHECK(P("x1*x1", f3, 1) == P("x1^2", f3, 1));
    CHECK(P("-x1", f3, 1) == P("2*x1", f3, 1));

    auto f4 = FieldSpec::make(2, 2);
    Poly e = P("g2*x1 + g3", f4, 1);
    CHECK(parse_poly(e.to_string(), f4, 1) == e);

    CHECK_THROWS_AS(P("x9", f3, 3), std::invalid_argument);
    CHECK_THROWS_AS(P("x1 + + x2", f3, 3), std::invalid_argument);
    CHECK_THROWS_AS(P("y1", f3, 3), std::invalid_argument);
    CHECK_THROWS_AS(P("g7", f4, 1), std::invalid_argument);

    for (std::uint32_t q : {2u, 3u, 4u}) {
        auto spec = q == 4 ? FieldSpec::make(2, 2) : FieldSpec::make(q);
        std::mt19937 gen(7 * q + 1);
        for (int i = 0; i < 170; ++i) {
            Poly r = testutil::random_poly(gen, spec, 5, 6, 4);
            CHECK(parse_poly(r.to_string(), spec, 5) == r);
        }
    }
}

TEST_CASE("length counts variable occurrences with constants as one") {
    auto f2 = FieldSpec::make(2);
    CHECK(P("x1*x2*x3 + x1", f2, 3).length() == 4);
    CHECK(P("1", f2, 3).length() == 1);
    CHECK(P("0", f2, 3).length() == 0);
    auto f3 = FieldSpec::make(3);
    CHECK(P("x1^2*x2 + 2", f3, 2).length() == 4);
}

TEST_SUITE_END();
