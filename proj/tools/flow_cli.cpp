// flow: generate and validate synthetic daily-behavior panel datasets.

#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "flow/config.hpp"
#include "flow/csv.hpp"
#include "flow/date.hpp"
#include "flow/generator.hpp"
#include "flow/validate.hpp"

namespace {

struct GenerateFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> users;
    std::string start;
    std::string end;
    std::string out = "flow_output";
    unsigned threads = 0;
    bool no_denormalized = false;
    bool quiet = false;
};

struct ValidateFlags {
    std::string dir;
    std::string report;
    flow::ValidationThresholds thresholds;
};

flow::Date date_flag(const std::string& text, const char* flag) {
    try {
        return flow::parse_date(text);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError(flag, fmt::format("expected YYYY-MM-DD, got '{}'", text));
    }
}

int run_generate(const GenerateFlags& f) {
    flow::GeneratorConfig config = f.config_path.empty() ? flow::default_config() : flow::load_config(f.config_path);
    flow::apply_seed_environment(config);
    if (f.seed) config.seed = *f.seed;
    if (f.users) config.population_size = *f.users;
    if (!f.start.empty()) config.start_date = date_flag(f.start, "--start");
    if (!f.end.empty()) config.end_date = date_flag(f.end, "--end");
    if (f.no_denormalized) config.emit_denormalized = false;

    const unsigned threads = f.threads > 0 ? f.threads : std::max(1U, std::thread::hardware_concurrency());
    flow::ProgressFn progress;
    if (!f.quiet) {
        progress = [](std::uint32_t done, std::uint32_t total) {
            fmt::print(stderr, "\rsimulated {}/{} users", done, total);
            if (done == total) fmt::print(stderr, "\n");
        };
    }
    const auto result = flow::generate_dataset(config, f.out, threads, progress);
    const auto& c = result.counts;
    fmt::print("users {}\n", c.users);
    fmt::print("daily_logs {}\n", c.daily_logs);
    fmt::print("weekly_summaries {}\n", c.weekly_summaries);
    fmt::print("interventions {}\n", c.interventions);
    if (c.daily_all) fmt::print("daily_all {}\n", *c.daily_all);
    fmt::print("wall_seconds {:.3f}\n", result.wall_seconds);
    return 0;
}

int run_validate(const ValidateFlags& f) {
    const auto report = flow::validate_dataset(f.dir, f.thresholds);
    const std::filesystem::path path =
        f.report.empty() ? std::filesystem::path(f.dir) / "validation_report.json" : std::filesystem::path(f.report);
    std::ofstream out(path, std::ios::binary);
    out << report.to_json();
    if (!out) throw std::runtime_error(fmt::format("{}: cannot write report", path.string()));
    fmt::print("{}", report.summary());
    return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic daily-behavior dataset generator and validator"};
    app.require_subcommand(1);

    GenerateFlags gen;
    auto* generate = app.add_subcommand("generate", "Simulate a population and write the CSV tables");
    generate->add_option("--config", gen.config_path, "JSON config file")->check(CLI::ExistingFile);
    generate->add_option("--seed", gen.seed, "Random seed (overrides FLOW_SEED and the config file)");
    generate->add_option("--users", gen.users, "Population size")->check(CLI::PositiveNumber);
    generate->add_option("--start", gen.start, "First simulated date, YYYY-MM-DD");
    generate->add_option("--end", gen.end, "Last simulated date, YYYY-MM-DD (inclusive)");
    generate->add_option("--out", gen.out, "Output directory")->capture_default_str();
    generate->add_option("--threads", gen.threads, "Worker threads (0 = hardware concurrency)");
    generate->add_flag("--no-denormalized", gen.no_denormalized, "Skip daily_all.csv");
    generate->add_flag("-q,--quiet", gen.quiet, "No progress output");

    ValidateFlags val;
    auto& t = val.thresholds;
    auto* validate = app.add_subcommand("validate", "Run the sanity-check suite on a dataset directory");
    validate->add_option("--dir", val.dir, "Dataset directory")->required()->check(CLI::ExistingDirectory);
    validate->add_option("--report", val.report, "Report path (default DIR/validation_report.json)");
    validate->add_option("--min-corr-work-stress", t.min_corr_work_stress)->capture_default_str();
    validate->add_option("--max-corr-stress-sleep", t.max_corr_stress_sleep)->capture_default_str();
    validate->add_option("--max-corr-stress-mood", t.max_corr_stress_mood)->capture_default_str();
    validate->add_option("--min-corr-exercise-mood", t.min_corr_exercise_mood)->capture_default_str();
    validate->add_option("--sleep-mean-min", t.sleep_mean_min)->capture_default_str();
    validate->add_option("--sleep-mean-max", t.sleep_mean_max)->capture_default_str();
    validate->add_option("--max-weight-step", t.max_weight_step_kg)->capture_default_str();
    validate->add_option("--min-stress-autocorr", t.min_stress_autocorr)->capture_default_str();
    validate->add_option("--min-user-stress-sd", t.min_user_stress_sd)->capture_default_str();
    validate->add_option("--min-vacation-above-mean", t.min_vacation_above_mean)->capture_default_str();
    validate->add_option("--weight-tolerance", t.weight_conservation_tol_kg)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) return run_generate(gen);
        return run_validate(val);
    } catch (const CLI::ValidationError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    } catch (const flow::ConfigError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
