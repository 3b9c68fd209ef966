#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

using Catch::Approx;
using nlohmann::json;

namespace {

const double kZeta2 = 1.6449340668482264;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    const char* cli = std::getenv("HYPERZETA_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string(cli) + " " + args
                    + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    int status = pclose(f);
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

} // namespace

TEST_CASE("eval round trip", "[cli]") {
    auto r = run_cli("eval --family sinh --alpha 1 --a 1 --b 1 --s 2");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["value"]["re"].get<double>() == Approx(kZeta2).margin(1e-8));
    CHECK(std::abs(j["value"]["im"].get<double>()) < 1e-10);
    CHECK(j["err_estimate"].get<double>() < 1e-6);
    CHECK(j["method"].get<std::string>() == "integral");

    auto v = run_cli("eval --family sinh --alpha 1 --a 1 --b 1 --s 3 --mode verify");
    REQUIRE(v.code == 0);
    json jv = json::parse(v.out);
    CHECK(jv["method"].get<std::string>() == "verify");
    bool agrees = false;
    for (const auto& w : jv["warnings"])
        if (w.get<std::string>() == "agrees:series") agrees = true;
    CHECK(agrees);

    auto c = run_cli("eval --family cosh --alpha 1 --a 1 --b 1 --s 1+1i");
    REQUIRE(c.code == 0);
    json jc = json::parse(c.out);
    CHECK(std::isfinite(jc["value"]["re"].get<double>()));
    CHECK(std::isfinite(jc["value"]["im"].get<double>()));
}

TEST_CASE("exit codes follow the contract", "[cli]") {
    CHECK(run_cli("eval --family sinh --alpha 1 --a 1 --b 1 --s 2").code == 0);
    CHECK(run_cli("eval --family frob --alpha 1 --a 1 --b 1 --s 2").code == 2);
    CHECK(run_cli("poles --family cosh --alpha 1 --a 1 --b 1").code == 2);
    CHECK(run_cli("grid --family sinh --re-min 2 --re-max 1").code == 2);
    CHECK(run_cli("eval --family sinh --alpha 1 --a 1 --b 0.5 --s 2").code == 3);
    CHECK(run_cli("sample --family tanh --alpha 1 --a 1 --count 3").code == 3);

    auto pole = run_cli("eval --family sinh --alpha 1 --a 1 --b 1 --s 1", true);
    REQUIRE(pole.code == 4);
    json j = json::parse(pole.out);
    CHECK(j["error"].get<std::string>() == "AtPoleError");
    CHECK(j["pole"].get<double>() == Approx(1.0).margin(1e-12));
    CHECK(j["residue"].get<double>() == Approx(1.0).margin(1e-9));
}

TEST_CASE("pole report output", "[cli]") {
    auto r = run_cli("poles --family sinh --alpha 0.5 --a 1 --b 1 --n-max 1");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["location"].get<double>() == Approx(0.5).margin(1e-14));
    CHECK(j[0]["residue"].get<double>()
          == Approx(0.5641895835477563).margin(1e-8));
    CHECK(j[0]["kind"].get<std::string>() == "noninteger-case-i");
    CHECK(j[1]["location"].get<double>() == Approx(-0.5).margin(1e-14));
    CHECK(j[1]["residue"].get<double>()
          == Approx(0.2115710938304086).margin(1e-8));
    CHECK(j[1]["kind"].get<std::string>() == "noninteger-case-ii");
}

TEST_CASE("grid sweep", "[cli]") {
    std::string args = "grid --family sinh --alpha 1 --a 1 --b 1 "
                       "--re-min 0 --re-max 2 --re-step 1 "
                       "--im-min -1 --im-max 1 --im-step 1";
    auto r = run_cli(args);
    REQUIRE(r.code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 10);
    CHECK(ls[0] == "re,im,value_re,value_im,abs,err_estimate,flag");
    bool near = false;
    for (const auto& l : ls)
        if (l == "1,0,,,,,near-pole") near = true;
    CHECK(near);

    auto again = run_cli(args);
    CHECK(again.out == r.out);
}

TEST_CASE("sampling is deterministic in the seed", "[cli]") {
    auto a = run_cli("sample --family cosh --alpha 1 --a 1 --count 5 --seed 42");
    auto b = run_cli("sample --family cosh --alpha 1 --a 1 --count 5 --seed 42");
    auto c = run_cli("sample --family cosh --alpha 1 --a 1 --count 5 --seed 43");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    auto ls = lines_of(a.out);
    REQUIRE(ls.size() == 5);
    for (const auto& l : ls) {
        std::size_t pos = 0;
        double v = std::stod(l, &pos);
        CHECK(pos == l.size());
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("fast selfcheck passes", "[cli]") {
    auto r = run_cli("selfcheck --fast");
    CHECK(r.code == 0);
    CHECK(r.out.find("classical-values") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
