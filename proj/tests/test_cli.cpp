#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rrc/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = rrc::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("rrc-test-" + name)).string();
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({"rr", "--order", "200"}).code == 0);
    CHECK(run({"certificate", "--n-max", "12", "--order", "120"}).code == 0);

    const auto bad = run({"theorem2", "--k", "99", "--order", "-1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("--") != std::string::npos);
    const auto neg = run({"gdiff", "--order", "-1"});
    CHECK(neg.code == 2);
    CHECK(neg.err.find("--order") != std::string::npos);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"rr", "--bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("series dump") {
    const auto g = run({"series-dump", "--name", "G", "-N", "7", "--at-x1"});
    CHECK(g.code == 0);
    CHECK(g.out == "q^0: 1\nq^1: 0\nq^2: 1\nq^3: 1\nq^4: 1\nq^5: 1\nq^6: 2\n");

    const auto f = run({"series-dump", "--name", "F", "-N", "8", "--x-cap", "4"});
    CHECK(f.code == 0);
    CHECK(f.out.rfind("x^0 q^0: 1\n", 0) == 0);
    CHECK(f.out.find("x^0 q^1") == std::string::npos);
    CHECK(f.out.find("x^1 q^1: 1\n") != std::string::npos);

    CHECK(run({"series-dump", "--name", "G", "-N", "0", "--at-x1"}).out.empty());
    CHECK(run({"series-dump", "--name", "F", "-N", "0"}).out.empty());
    CHECK(run({"series-dump", "--name", "nope"}).code == 2);
    CHECK(run({"series-dump"}).code == 2);

    const auto j = run({"series-dump", "--name", "rr2-product", "-N", "7", "--json", "-"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["coefficients"].back() == nlohmann::json::array({0, 6, "2"}));
}

TEST_CASE("json reports and determinism") {
    const auto a = run({"fincor", "-N", "30", "--x-cap", "10", "--json", "-", "--stable"});
    const auto b = run({"fincor", "-N", "30", "--x-cap", "10", "--json", "-", "--stable"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto doc = nlohmann::json::parse(a.out);
    CHECK(doc["status"] == "pass");
    const auto& r = doc["reports"][0];
    CHECK(r["check"] == "fincor");
    CHECK(r["params"]["N"] == 30);
    CHECK(r["status"] == "pass");
    CHECK(r["witness"].is_null());
    CHECK_FALSE(r.contains("elapsed_ms"));

    const auto timed = run({"rr", "-N", "20", "--json", "-"});
    CHECK(nlohmann::json::parse(timed.out)["reports"][0].contains("elapsed_ms"));

    const auto path = temp_path("report.json");
    const auto text = run({"euler", "-N", "30", "--json", path, "--stable"});
    CHECK(text.code == 0);
    CHECK(text.out.rfind("PASS euler", 0) == 0);
    std::ifstream in(path);
    CHECK(nlohmann::json::parse(in)["command"] == "euler");
    std::remove(path.c_str());
}

TEST_CASE("crystal convention pinning") {
    const auto pin = temp_path("convention.json");
    std::remove(pin.c_str());
    const std::vector<std::string> args = {"crystal", "--k", "2", "--max-size", "8",
                                           "--stable", "--convention-file", pin};
    const auto first = run(args);
    CHECK(first.code == 0);
    CHECK(std::filesystem::exists(pin));
    const auto second = run(args);
    CHECK(second.out == first.out);
    CHECK(first.out.find("convention=bottom-up/right-first") != std::string::npos);

    // A pinned convention is used as is; a wrong pin makes the check fail.
    {
        std::ofstream out(pin);
        out << R"({"convention": "top-down/left-first", "qualifiers": ["top-down/left-first"], "max_size": 12})";
    }
    const auto wrong = run(args);
    CHECK(wrong.code == 1);
    CHECK(wrong.out.find("witness") != std::string::npos);

    auto re = args;
    re.push_back("--recalibrate");
    CHECK(run(re).code == 0);
    CHECK(run(args).code == 0);
    std::remove(pin.c_str());
}

TEST_CASE("command list") {
    const auto& cmds = rrc::cli_commands();
    CHECK(cmds.front() == "all");
    CHECK(cmds.back() == "series-dump");
    CHECK(cmds.size() == 18);
}
