#include <doctest.h>

#include <string>

#include "khinch/report.hpp"
#include "khinch/suites.hpp"

using namespace khinch;

TEST_CASE("double formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, 2.0}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("json escaping") {
    CHECK(json_escape("a\"b\\c\nd") == "a\\\"b\\\\c\\nd");
}

TEST_CASE("report summary and rendering") {
    VerificationReport rep;
    rep.suite = "demo";
    rep.add_meta("seed", "7");
    rep.add_case("case a", 1.0, 2.0, -1.0);
    rep.add_case("case b", 3.0, 2.0, 1.0);  // failure
    CHECK(rep.cases.size() == 2);
    CHECK(rep.pass_count() == 1);
    CHECK(rep.fail_count() == 1);
    CHECK_FALSE(rep.passed());
    CHECK(rep.worst_slack() == 1.0);
    CHECK(rep.worst_case() == "case b");

    const std::string json = rep.to_json();
    CHECK(json.find("\"suite\": \"demo\"") != std::string::npos);
    CHECK(json.find("\"fail\": 1") != std::string::npos);
    const std::string csv = rep.to_csv();
    CHECK(csv.find("# suite=demo") != std::string::npos);
    CHECK(csv.find("inputs,lhs,rhs,pass,slack") != std::string::npos);

    SUBCASE("case cap keeps failures") {
        VerificationReport big;
        big.suite = "cap";
        for (int i = 0; i < 500; ++i) big.add_case("ok " + std::to_string(i), 0, 1, -1);
        big.add_case("bad", 2, 1, 1);
        const std::string out = big.to_json(10);
        CHECK(out.find("\"bad\"") != std::string::npos);
        CHECK(out.find("ok 9") != std::string::npos);
        CHECK(out.find("ok 10\"") == std::string::npos);
        CHECK(out.find("\"cases\": 501") != std::string::npos);
    }
}

TEST_CASE("rendering is deterministic") {
    auto make = [] {
        auto rep = suites::ko2(500, 6, 1e-12, 99);
        rep.add_meta("timestamp", "");
        return rep.to_json();
    };
    CHECK(make() == make());
}

TEST_CASE("suites pass on reduced grids") {
    {
        BruteForceOptions bo;
        bo.resolution = 24;
        bo.starts = 4;
        const auto rep = suites::prop_x_oracle({5.0}, {4.5}, {2, 3}, 1e-4, bo);
        CHECK(rep.passed());
        // the p in (4,5) rows are report-only and never fail
        bool saw_report_row = false;
        for (const auto& c : rep.cases)
            if (c.inputs.find("report-only") != std::string::npos) {
                saw_report_row = true;
                CHECK(c.pass);
            }
        CHECK(saw_report_row);
    }
    CHECK(suites::ko1(40, 8).passed());
    CHECK(suites::ko2(2000, 10).passed());
    CHECK(suites::extremal(300).passed());
    CHECK(suites::np_sign({0.5, 1.0}, {4.0}, 4000).passed());
    CHECK(suites::x_gauss().passed());
    CHECK(suites::stability(200).passed());
    CHECK(suites::lower_bound({1, 2, 3, 8, 64, 512}, {3.0, 6.0}).passed());
    CHECK(suites::doubling({1, 2, 3, 8, 64, 512}, {3.0, 6.0}).passed());
    CHECK(suites::binomial_moment(64).passed());
    CHECK(suites::interp_endpoints(500).passed());
    CHECK(suites::thm_cp4({6.0}, 6).passed());
}

TEST_CASE("suite results are independent of the worker count") {
    const auto a = suites::ko1(60, 8, 2.0, 10.0, 1e-8, 5, 1);
    const auto b = suites::ko1(60, 8, 2.0, 10.0, 1e-8, 5, 4);
    CHECK(a.to_json() == b.to_json());
    const auto c = suites::stability(50, {4.0, 6.0}, 10, 3, 1e-12, 1);
    const auto d = suites::stability(50, {4.0, 6.0}, 10, 3, 1e-12, 3);
    CHECK(c.to_json() == d.to_json());
}
