#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(KHINCH_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("cli: help") {
    const auto r = run("--help");
    CHECK(r.exit_code == 0);
    const auto v = run("verify --help");
    CHECK(v.exit_code == 0);
    for (const char* suite : {"thm-cp4", "prop-x-oracle", "ko1", "ko2", "extremal", "np-sign",
                              "x-gauss", "stability", "lower-bound", "doubling",
                              "binomial-moment", "interp-endpoints"})
        CHECK(v.out.find(suite) != std::string::npos);
}

TEST_CASE("cli: constant") {
    SUBCASE("p = q is 1") {
        const auto r = run("constant --p 4 --q 4 --dim 5");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("value   = 1") != std::string::npos);
    }
    SUBCASE("sqrt(2) by brute force") {
        const auto r = run("constant --p 2 --q 1 --dim 2 --method bruteforce --format json");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(std::abs(j["value"].get<double>() - std::sqrt(2.0)) <= 1e-8);
        CHECK(j["method"] == "bruteforce");
    }
    SUBCASE("reduced estimate stays below the gamma ceiling") {
        const auto r = run("constant --p 6 --q 4 --dim 10 --method reduced --format json");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        const double ceiling = std::pow(15.0, 1.0 / 6.0) / std::pow(3.0, 0.25);
        CHECK(j["value"].get<double>() <= ceiling + 1e-9);
        CHECK(j["conjecture_at_one"].is_boolean());
        CHECK(j["reduction_exact"] == true);
        CHECK(j["argmax"].size() == 10);
    }
    SUBCASE("reduced requires q = 4") {
        CHECK(run("constant --p 2 --q 1 --dim 2 --method reduced").exit_code == 2);
    }
    SUBCASE("bad flags exit 2") {
        CHECK(run("constant --p 4 --q 4").exit_code == 2);
        CHECK(run("constant --p 4 --q 4 --dim 3 --method nope").exit_code == 2);
    }
}

TEST_CASE("cli: verify exit codes and formats") {
    SUBCASE("passing suite exits 0 with a clean summary") {
        const auto r = run("verify ko2 --samples 2000 --seed 7");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["suite"] == "ko2");
        CHECK(j["summary"]["fail"] == 0);
        CHECK(j["summary"]["cases"] == 2000);
    }
    SUBCASE("np-sign single point") {
        const auto r = run("verify np-sign --y 1 --q 4 --grid 4000");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["summary"]["fail"] == 0);
    }
    SUBCASE("csv format") {
        const auto r = run("verify lower-bound --p 3 --format csv");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("# suite=lower-bound") == 0);
        CHECK(r.out.find("inputs,lhs,rhs,pass,slack") != std::string::npos);
    }
    SUBCASE("an impossible tolerance makes verification fail with exit 1") {
        const auto r = run("verify x-gauss --tol -1");
        CHECK(r.exit_code == 1);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["summary"]["fail"].get<int>() > 0);
    }
    SUBCASE("x-gauss honors p/q grid overrides") {
        const auto r = run("verify x-gauss --p 7 --q 3 --y 0 --y 1");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["summary"]["cases"] == 2);
        CHECK(j["cases"][0]["inputs"] == "y=0 p=7 q=3");
    }
    SUBCASE("unknown suite exits 2") {
        CHECK(run("verify nosuch").exit_code == 2);
    }
}

TEST_CASE("cli: byte-identical reruns") {
    const std::string argset = "verify ko1 --samples 40 --seed 11";
    const auto a = run(argset);
    const auto b = run(argset);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    // worker count must not change the bytes
    const auto t1 = run(argset + " --threads 1");
    const auto t3 = run(argset + " --threads 3");
    CHECK(t1.out == t3.out);
    CHECK(a.out == t1.out);
    // SOURCE_DATE_EPOCH pins the timestamp deterministically
    const auto e1 = run(argset, "SOURCE_DATE_EPOCH=1700000000 ");
    const auto e2 = run(argset, "SOURCE_DATE_EPOCH=1700000000 ");
    CHECK(e1.out == e2.out);
    CHECK(e1.out.find("2023-11-14T22:13:20Z") != std::string::npos);
}

TEST_CASE("cli: extremal") {
    SUBCASE("gamma = 1/2 representatives") {
        const auto r = run("extremal --alpha 1 --beta4 0.5 --n 3 --format json");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(std::abs(j["p_plus"][0].get<double>() - 0.816496580927726) <= 1e-12);
        CHECK(std::abs(j["p_plus"][1].get<double>() - 0.408248290463863) <= 1e-12);
        CHECK(std::abs(j["p_minus"][0].get<double>() - 0.707106781186547) <= 1e-12);
        CHECK(j["p_minus"][2].get<double>() == 0.0);
    }
    SUBCASE("gamma = 1 collapses both to one atom") {
        const auto r = run("extremal --alpha 1 --beta4 1 --n 4 --format json");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(std::abs(j["p_plus"][0].get<double>() - 1.0) <= 1e-12);
        CHECK(std::abs(j["p_minus"][0].get<double>() - 1.0) <= 1e-12);
    }
    SUBCASE("boundary gamma = 1/n is the equal-weights point") {
        const auto r = run("extremal --alpha 1 --beta4 0.25 --n 4 --format json");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(j["p_plus"][static_cast<std::size_t>(i)].get<double>() - 0.5) <= 1e-9);
    }
    SUBCASE("infeasible specs exit 2") {
        CHECK(run("extremal --alpha 1 --beta4 2 --n 3").exit_code == 2);
        CHECK(run("extremal --alpha 1 --beta4 0.1 --n 3").exit_code == 2);
        CHECK(run("extremal --alpha 1 --n 3").exit_code == 2);
    }
}

TEST_CASE("cli: curve") {
    const auto r = run("curve --n 1 --p 8 --q 4 --x-min 1 --x-max 1000000 --points 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("# n=1 p=8 q=4") == 0);
    CHECK(r.out.find("x,f\n1,") != std::string::npos);
    // first sample is 2^{1/8}, last is ~1
    const auto first_pos = r.out.find("\n1,") + 3;
    const double f1 = std::stod(r.out.substr(first_pos));
    CHECK(std::abs(f1 - std::pow(2.0, 0.125)) <= 1e-12);
    const auto last_comma = r.out.rfind(',');
    const double flast = std::stod(r.out.substr(last_comma + 1));
    CHECK(std::abs(flast - 1.0) <= 1e-6);
    SUBCASE("json format and p = q") {
        const auto rj = run("curve --n 3 --p 5 --q 5 --points 7 --format json");
        CHECK(rj.exit_code == 0);
        const auto j = nlohmann::json::parse(rj.out);
        CHECK(j["samples"].size() == 7);
        for (const auto& s : j["samples"])
            CHECK(std::abs(s["f"].get<double>() - 1.0) <= 1e-12);
    }
    SUBCASE("bad range exits 2") {
        CHECK(run("curve --n 1 --p 6 --q 4 --x-min 9 --x-max 2").exit_code == 2);
    }
}

TEST_CASE("cli: config file") {
    const std::string path = "/tmp/khinch_test_config.cfg";
    {
        std::ofstream out(path);
        out << "# precision profile\n";
        out << "bruteforce_resolution = 8\n";
        out << "coarse_grid=64\n";
    }
    const auto r = run("--config " + path + " constant --p 5 --q 4 --dim 2 --format json");
    CHECK(r.exit_code == 0);
    SUBCASE("env var points at the profile") {
        const auto e = run("constant --p 5 --q 4 --dim 2 --format json",
                           "KHINCH_CONFIG=" + path + " ");
        CHECK(e.exit_code == 0);
        CHECK(e.out == r.out);
    }
    SUBCASE("unknown keys are rejected") {
        const std::string bad = "/tmp/khinch_test_config_bad.cfg";
        std::ofstream(bad) << "no_such_key=1\n";
        CHECK(run("--config " + bad + " constant --p 5 --q 4 --dim 2").exit_code == 2);
    }
    SUBCASE("the bundled profile parses and mirrors the defaults") {
        const auto with = run(std::string("--config ") + KHINCH_BUNDLED_CFG +
                              " verify doubling --p 3 --threads 1");
        const auto without = run("verify doubling --p 3 --threads 1");
        CHECK(with.exit_code == 0);
        CHECK(with.out == without.out);
    }
    std::remove(path.c_str());
}

TEST_CASE("cli: output file writing") {
    const std::string path = "/tmp/khinch_test_out.json";
    const auto r = run("verify doubling --p 3 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto j = nlohmann::json::parse(content);
    CHECK(j["suite"] == "doubling");
    CHECK(j["summary"]["fail"] == 0);
    std::remove(path.c_str());
}
