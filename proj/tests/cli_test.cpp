#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

namespace {

struct Run {
    int exit_code = -1;
    std::string out;
};

/// Runs the CLI through the shell, capturing stdout and stderr together.
Run flow_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" FLOW_CLI_PATH "\" " + args + " 2>&1";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::size_t lines(const std::filesystem::path& p) {
    const auto text = testing::slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(flow_cli("--help").exit_code == 0);
    CHECK(flow_cli("generate --help").exit_code == 0);
    CHECK(flow_cli("").exit_code == 2);
    CHECK(flow_cli("frobnicate").exit_code == 2);
    CHECK(flow_cli("generate --users zero").exit_code == 2);
    CHECK(flow_cli("generate --users 0").exit_code == 2);
    CHECK(flow_cli("generate --bogus").exit_code == 2);
    const auto dir = testing::scratch_dir("cli_usage");
    CHECK(flow_cli("generate --start 2024-13-01 --out " + dir.string()).exit_code == 2);
    CHECK(flow_cli("validate").exit_code == 2);
    CHECK(flow_cli("validate --dir " + (dir / "nope").string()).exit_code == 2);
}

TEST_CASE("generate a short range") {
    const auto dir = testing::scratch_dir("cli_week");
    const auto r = flow_cli("generate -q --start 2024-01-01 --end 2024-01-07 --users 2 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("daily_logs 14\n") != std::string::npos);
    CHECK(r.out.find("wall_seconds") != std::string::npos);
    CHECK(lines(dir / "daily_logs.csv") == 15);
    CHECK(lines(dir / "daily_all.csv") == 15);
    CHECK(lines(dir / "weekly_summaries.csv") == 3);

    const auto bare = testing::scratch_dir("cli_bare");
    CHECK(flow_cli("generate -q --users 2 --end 2024-01-31 --no-denormalized --out " + bare.string()).exit_code == 0);
    CHECK_FALSE(std::filesystem::exists(bare / "daily_all.csv"));
}

TEST_CASE("identical invocations give identical bytes") {
    const auto a = testing::scratch_dir("cli_rep_a");
    const auto b = testing::scratch_dir("cli_rep_b");
    const std::string args = "generate -q --users 10 --seed 1 --end 2024-06-30 --out ";
    REQUIRE(flow_cli(args + a.string() + " --threads 1").exit_code == 0);
    REQUIRE(flow_cli(args + b.string() + " --threads 4").exit_code == 0);
    for (auto name : {"users.csv", "daily_logs.csv", "weekly_summaries.csv", "interventions.csv", "daily_all.csv",
                      "manifest.json"}) {
        CAPTURE(name);
        CHECK(testing::slurp(a / name) == testing::slurp(b / name));
    }
}

TEST_CASE("seed precedence: flag over environment over file") {
    const auto dir = testing::scratch_dir("cli_seed");
    testing::spit(dir / "config.json", R"({"seed": 5, "population_size": 2, "end_date": "2024-01-14"})");
    const std::string base = "generate -q --config " + (dir / "config.json").string() + " --out " + (dir / "out").string();
    auto seed = [&] { return nlohmann::json::parse(testing::slurp(dir / "out" / "manifest.json"))["seed"]; };

    REQUIRE(flow_cli(base).exit_code == 0);
    CHECK(seed() == 5);
    REQUIRE(flow_cli(base, "FLOW_SEED=6").exit_code == 0);
    CHECK(seed() == 6);
    REQUIRE(flow_cli(base + " --seed 7", "FLOW_SEED=6").exit_code == 0);
    CHECK(seed() == 7);
    CHECK(nlohmann::json::parse(testing::slurp(dir / "out" / "manifest.json"))["population_size"] == 2);

    CHECK(flow_cli(base, "FLOW_SEED=nope").exit_code == 1);
    testing::spit(dir / "bad.json", R"({"sensitivities": {"stress_persistence": 1.5}})");
    const auto bad = flow_cli("generate -q --config " + (dir / "bad.json").string() + " --out " + (dir / "x").string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("stress_persistence") != std::string::npos);
}

TEST_CASE("validate exit codes") {
    const auto dir = testing::scratch_dir("cli_validate");
    REQUIRE(flow_cli("generate -q --users 40 --out " + dir.string()).exit_code == 0);
    const auto ok = flow_cli("validate --dir " + dir.string());
    INFO(ok.out);
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("overall: PASS") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "validation_report.json"));

    const auto custom = flow_cli("validate --dir " + dir.string() + " --report " + (dir / "r.json").string() +
                                 " --min-corr-work-stress 0.99");
    CHECK(custom.exit_code == 1);
    CHECK(nlohmann::json::parse(testing::slurp(dir / "r.json"))["overall_pass"] == false);

    auto daily = testing::slurp(dir / "daily_logs.csv");
    const auto pos = daily.find(",normal,");
    REQUIRE(pos != std::string::npos);
    daily.replace(pos + 8, 4, "99.0");
    testing::spit(dir / "daily_logs.csv", daily);
    CHECK(flow_cli("validate --dir " + dir.string()).exit_code == 1);

    std::filesystem::remove(dir / "weekly_summaries.csv");
    const auto missing = flow_cli("validate --dir " + dir.string());
    CHECK(missing.exit_code == 1);
    CHECK(missing.out.find("weekly_summaries.csv") != std::string::npos);
}
