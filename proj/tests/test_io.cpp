#include <doctest.h>

#include "finchar/io.hpp"
#include "finchar/oracle.hpp"
#include "testutil.hpp"

using namespace finchar;

TEST_SUITE_BEGIN("io");

TEST_CASE("system files parse and round trip") {
    const std::string text =
        "# a comment\n"
        "q 3\n"
        "n 3\n"
        "x1*x2*x3^2 + 2\n"
        "2*x2^2 + x1*x3 + 1  # trailing comment\n";
    SystemFile sys = parse_system_text(text);
    CHECK(sys.spec->q() == 3);
    CHECK(sys.nvars == 3);
    REQUIRE(sys.polys.size() == 2);
    CHECK(sys.polys[0] == parse_poly("x1*x2*x3^2 + 2", sys.spec, 3));

    SystemFile again = parse_system_text(write_system(sys));
    CHECK(again.nvars == sys.nvars);
    CHECK(again.polys == sys.polys);
    CHECK(*again.spec == *sys.spec);

    // extension field header carries the modulus
    SystemFile ext;
    ext.spec = FieldSpec::make(2, 2);
    ext.nvars = 2;
    ext.polys = {parse_poly("g2*x1*x2 + g3", ext.spec, 2)};
    SystemFile ext2 = parse_system_text(write_system(ext));
    CHECK(ext2.polys == ext.polys);
    CHECK(ext2.spec->modulus() == ext.spec->modulus());

    CHECK_THROWS_AS(parse_system_text("n 3\nx1\n"), std::invalid_argument);  // missing q
    CHECK_THROWS_AS(parse_system_text("q 3\nx1\n"), std::invalid_argument);  // missing n
    CHECK_THROWS_AS(parse_system_text("q 3\nn 1\nx2\n"), std::invalid_argument);

    std::mt19937 gen(31415);
    for (int i = 0; i < 50; ++i) {
        SystemFile s;
        s.spec = FieldSpec::make(3);
        s.nvars = 4;
        s.polys = testutil::random_system(gen, s.spec, 4, 5, 4, 3);
        SystemFile t = parse_system_text(write_system(s));
        CHECK(t.polys == s.polys);
    }
}

TEST_CASE("solve reports") {
    auto f3 = FieldSpec::make(3);
    std::vector<Poly> ps{parse_poly("x1*x2*x3^2 + 2", f3, 3)};
    Decomposition d = tdcs(ps, f3, 3);
    ReportOptions opts;
    opts.enumerate = true;
    nlohmann::json rep = build_report(d, f3, 3, opts);
    CHECK(rep["status"] == "complete");
    CHECK(rep["total_count"] == "4");
    CHECK(rep["components"].size() == 1);
    CHECK(rep["components"][0]["degree"] == 4);
    CHECK(rep["components"][0]["dim"] == 0);
    CHECK(rep["components"][0]["count"] == "4");
    REQUIRE(rep["solutions"].size() == 4);
    CHECK(rep["solutions"][0] == nlohmann::json::array({1, 1, 1}));

    LoadedReport back = parse_report(rep);
    CHECK(back.status == "complete");
    CHECK(back.nvars == 3);
    REQUIRE(back.decomposition.components.size() == 1);
    CHECK(back.decomposition.components[0].polys() == d.components[0].polys());

    // inconsistent solves carry no total count
    Decomposition none = tdcs({parse_poly("x1^2 + 1", f3, 1)}, f3, 1);
    nlohmann::json rep2 = build_report(none, f3, 1, {});
    CHECK(rep2["status"] == "inconsistent");
    CHECK(!rep2.contains("total_count"));

    // partial reports
    Decomposition part = d;
    part.complete = false;
    nlohmann::json rep3 = build_report(part, f3, 3, {});
    CHECK(rep3["status"] == "partial");
    CHECK(!rep3.contains("total_count"));

    CHECK_THROWS_AS(build_report(d, f3, 3, ReportOptions{true, 2}), std::invalid_argument);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    auto f2 = FieldSpec::make(2);
    std::mt19937 gen(2718);
    for (int i = 0; i < 8; ++i) {
        std::vector<Poly> ps = testutil::random_system(gen, f2, 6, 5, 4, 3);
        ReportOptions ropts;
        ropts.enumerate = true;
        std::vector<std::string> renders;
        for (unsigned threads : {1u, 1u, 8u}) {
            SolveOptions opts;
            opts.threads = threads;
            Decomposition d = mfcs(ps, f2, 6, opts);
            renders.push_back(render_report(build_report(d, f2, 6, ropts)));
        }
        CHECK(renders[0] == renders[1]);
        CHECK(renders[0] == renders[2]);
    }
}

TEST_SUITE_END();
