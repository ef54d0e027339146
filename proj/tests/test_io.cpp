#include "doctest.h"

#include "ybx/constructions.hpp"
#include "ybx/io.hpp"

using namespace ybx;

TEST_CASE("solution artifacts round trip byte-identically") {
    FinAbGroup z2 = FinAbGroup::parse("Z2");
    JFamily jf = JFamily::make(z2, GroupAut::identity(z2), {0, 1});
    Solution s = construct_newsol(jf);
    std::string text = solution_to_json(s);
    Solution back = solution_from_json(text);
    CHECK(back.size() == s.size());
    CHECK(back.sigma_flat() == s.sigma_flat());
    CHECK(back.labels() == s.labels());
    CHECK(solution_to_json(back) == text);
    CHECK(artifact_kind(text) == "solution");
}

TEST_CASE("brace artifacts round trip byte-identically") {
    FiniteBrace b = trivial_brace(FinAbGroup::parse("Z2xZ2"));
    std::string text = brace_to_json(b);
    FiniteBrace back = brace_from_json(text);
    CHECK(back.size() == b.size());
    CHECK(back.add_flat() == b.add_flat());
    CHECK(back.mul_flat() == b.mul_flat());
    CHECK(brace_to_json(back) == text);
    CHECK(artifact_kind(text) == "brace");
}

TEST_CASE("artifact parse errors") {
    CHECK_THROWS_AS(solution_from_json("not json"), ParseError);
    CHECK_THROWS_AS(solution_from_json("{\"kind\":\"brace\"}"), ParseError);
    CHECK_THROWS_AS(solution_from_json("{\"kind\":\"solution\",\"size\":2}"),
                    ParseError);
    CHECK_THROWS_AS(
        solution_from_json(
            "{\"kind\":\"solution\",\"size\":3,\"sigma\":[[0,1],[1,0]]}"),
        ParseError);
    CHECK_THROWS_AS(artifact_kind("{\"kind\":\"widget\"}"), ParseError);
    CHECK_THROWS_AS(brace_from_json("{\"kind\":\"brace\",\"size\":1}"), ParseError);
    // malformed table content is a failed check, not a parse error
    CHECK_THROWS_AS(
        solution_from_json(
            "{\"kind\":\"solution\",\"size\":2,\"sigma\":[[0,0],[0,1]]}"),
        CheckError);
}

TEST_CASE("reports are stable key-value lines") {
    Report r;
    r.set("alpha", true);
    r.set("beta", std::int64_t{42});
    r.set("gamma", std::string("x"));
    CHECK(r.text() == "alpha: true\nbeta: 42\ngamma: x\n");
}

TEST_CASE("solution report fields") {
    FinAbGroup z2 = FinAbGroup::parse("Z2");
    JFamily jf = JFamily::make(z2, GroupAut::identity(z2), {0, 1});
    Solution s = construct_newsol(jf);
    Report r = analyze_solution_report(s);
    std::string text = r.text();
    CHECK(text.find("involutive: true") != std::string::npos);
    CHECK(text.find("nondegenerate: true") != std::string::npos);
    CHECK(text.find("braid: true") != std::string::npos);
    CHECK(text.find("irretractable: true") != std::string::npos);
    CHECK(text.find("mpl: not-multipermutation") != std::string::npos);
    CHECK(text.find("simple: true") != std::string::npos);
    CHECK(text.find("perm_group_order: 8") != std::string::npos);
}

TEST_CASE("brace report fields") {
    FiniteBrace b = trivial_brace(FinAbGroup::parse("Z4"));
    Report r = brace_report(b);
    std::string text = r.text();
    CHECK(text.find("brace_ok: true") != std::string::npos);
    CHECK(text.find("socle_size: 4") != std::string::npos);
    CHECK(text.find("simple: false") != std::string::npos);
    CHECK(text.find("ideal_count: 3") != std::string::npos);
}
