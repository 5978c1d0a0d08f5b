#include <algorithm>
#include <string>

#include "doctest.h"
#include "flow/csv.hpp"
#include "flow/export.hpp"
#include "flow/generator.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace flow;

namespace {

std::size_t line_count(const std::filesystem::path& p) {
    const auto text = testing::slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

GeneratorConfig small_config(std::uint32_t users = 5) {
    auto c = default_config();
    c.population_size = users;
    c.end_date = make_date(2024, 3, 31);
    return c;
}

}  // namespace

TEST_CASE("schemas") {
    CHECK(users_schema().header().starts_with("user_id,age,sex,height_cm,profession,work_mode,chronotype"));
    CHECK(daily_logs_schema().columns.size() == 21);
    CHECK(weekly_schema().header() ==
          "user_id,week_index,week_start_date,days_covered,avg_stress,avg_sleep_hours,sleep_debt_hours,"
          "job_satisfaction,anxiety_score,depression_score,avg_weight_kg,low_diet_days");
    CHECK(interventions_schema().header() == "intervention_id,user_id,type,start_date,end_date,intensity");
    CHECK(weekly_column_in_daily_all("avg_stress") == "week_avg_stress");
    CHECK(weekly_column_in_daily_all("week_index") == "week_index");

    const auto& all = daily_all_schema().columns;
    CHECK(all.size() == users_schema().columns.size() + daily_logs_schema().columns.size() - 1 +
                            weekly_schema().columns.size() - 1 + kInterventionTypeCount);
    std::vector<std::string> names;
    for (const auto& c : all) names.push_back(c.name);
    std::sort(names.begin(), names.end());
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
    CHECK(all.back().name == "lifestyle_program_active");
}

TEST_CASE("row formatting") {
    DailyRecord r;
    r.user_id = 3;
    r.date = make_date(2024, 2, 29);
    r.is_workday = true;
    r.work_hours = 8.456;
    r.stress_level = -0.0;
    r.weight_kg = 70.1234564;
    const auto row = format_daily_row(r);
    CHECK(row.starts_with("3,2024-02-29,true,8.46,0,0,normal,0.00,"));
    CHECK(row.ends_with(",70.123456"));
    CHECK(split_fields(row).size() == daily_logs_schema().columns.size());

    const InterventionEvent e{7, 3, InterventionType::sick_leave, make_date(2024, 1, 2), make_date(2024, 1, 4), 0.25};
    CHECK(format_intervention_row(e) == "7,3,sick_leave,2024-01-02,2024-01-04,0.250");

    const std::vector<InterventionEvent> events{e};
    CHECK(activity_flags(events, make_date(2024, 1, 3))[index_of(InterventionType::sick_leave)]);
    CHECK_FALSE(activity_flags(events, make_date(2024, 1, 5))[index_of(InterventionType::sick_leave)]);
    CHECK(format_activity_flags({true, false, false, true}) == "true,false,false,true");
    CHECK(join_daily_all_row("1,a", "1,b,c", "1,d", "false") == "1,a,b,c,d,false");
}

TEST_CASE("whole-table writers") {
    const auto dir = testing::scratch_dir("export_tables");
    const auto config = small_config(3);
    std::vector<UserProfile> profiles;
    std::vector<DailyRecord> records;
    std::vector<WeeklySummary> weeks;
    std::vector<InterventionEvent> events;
    for (std::uint32_t id = 1; id <= 3; ++id) {
        auto u = generate_user(config, id);
        profiles.push_back(u.profile);
        records.insert(records.end(), u.records.begin(), u.records.end());
        weeks.insert(weeks.end(), u.weeks.begin(), u.weeks.end());
        events.insert(events.end(), u.events.begin(), u.events.end());
    }
    write_users(dir / "users.csv", profiles);
    CHECK(line_count(dir / "users.csv") == 4);
    write_daily_logs(dir / "daily.csv", records);
    CHECK(line_count(dir / "daily.csv") == 1 + 3 * 91);
    write_weekly(dir / "weekly.csv", weeks);
    CHECK(line_count(dir / "weekly.csv") == 1 + 3 * 13);
    write_interventions(dir / "iv.csv", {});
    CHECK(testing::slurp(dir / "iv.csv") == interventions_schema().header() + "\n");
    write_daily_all(dir / "all.csv", profiles, records, weeks, events, config.start_date);
    CHECK(line_count(dir / "all.csv") == 1 + 3 * 91);

    auto dup = records;
    dup.insert(dup.begin() + 5, dup[5]);
    try {
        write_daily_logs(dir / "dup.csv", dup);
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find(format_date(dup[5].date)) != std::string::npos);
        CHECK(std::string(e.what()).find("user 1") != std::string::npos);
    }

    weeks.pop_back();
    CHECK_THROWS_AS(write_daily_all(dir / "all2.csv", profiles, records, weeks, events, config.start_date),
                    std::invalid_argument);
}

TEST_CASE("generate_dataset layout and determinism") {
    const auto a = testing::scratch_dir("export_a");
    const auto b = testing::scratch_dir("export_b");
    const auto config = small_config();
    const auto result = generate_dataset(config, a, 1);
    generate_dataset(config, b, 3);

    CHECK(result.counts.users == 5);
    CHECK(result.counts.daily_logs == 5 * 91);
    CHECK(result.counts.weekly_summaries == 5 * 13);
    CHECK(result.counts.daily_all == 5 * 91);
    for (auto name : {kUsersFile, kDailyLogsFile, kWeeklyFile, kInterventionsFile, kDailyAllFile, kManifestFile}) {
        CAPTURE(name);
        CHECK(testing::slurp(a / name) == testing::slurp(b / name));
    }
    CHECK(line_count(a / kDailyLogsFile) == 1 + 5 * 91);

    const auto manifest = nlohmann::json::parse(testing::slurp(a / kManifestFile));
    CHECK(manifest["seed"] == 42);
    CHECK(manifest["config_digest"] == config_digest(config));
    CHECK(manifest["tool_version"] == kToolVersion);
    CHECK(manifest["row_counts"]["daily_logs.csv"] == 455);

    // Intervention ids are dense and rows follow (user_id, start_date).
    CsvReader iv(a / kInterventionsFile);
    std::int64_t expected_id = 1;
    while (iv.next()) CHECK(iv.integer(0) == expected_id++);
    CHECK(expected_id - 1 == static_cast<std::int64_t>(result.counts.interventions));

    auto bare = config;
    bare.emit_denormalized = false;
    const auto r = generate_dataset(bare, a, 1);
    CHECK_FALSE(r.counts.daily_all.has_value());
    CHECK_FALSE(std::filesystem::exists(a / kDailyAllFile));
}

TEST_CASE("daily_all flags mark intervention days") {
    const auto dir = testing::scratch_dir("export_flags");
    auto config = small_config(20);
    generate_dataset(config, dir, 1);

    std::vector<InterventionEvent> vacations;
    CsvReader iv(dir / kInterventionsFile);
    while (iv.next()) {
        if (iv.field(2) == "vacation") {
            vacations.push_back({0, static_cast<std::uint32_t>(iv.integer(1)), InterventionType::vacation,
                                 iv.date(3), iv.date(4), 0.0});
        }
    }
    REQUIRE_FALSE(vacations.empty());

    CsvReader all(dir / kDailyAllFile);
    const auto user = all.column("user_id"), date = all.column("date"), flag = all.column("vacation_active"),
               workday = all.column("is_workday");
    int flagged = 0;
    while (all.next()) {
        const auto u = static_cast<std::uint32_t>(all.integer(user));
        const Date d = all.date(date);
        const bool inside = std::any_of(vacations.begin(), vacations.end(),
                                        [&](const InterventionEvent& e) { return e.user_id == u && e.covers(d); });
        CHECK(all.boolean(flag) == inside);
        if (inside) {
            ++flagged;
            CHECK_FALSE(all.boolean(workday));
        }
    }
    CHECK(flagged > 0);
}

TEST_CASE("csv reader reports file and line") {
    const auto dir = testing::scratch_dir("csv");
    testing::spit(dir / "t.csv", "a,b\n1,x\n2\n");
    CsvReader r(dir / "t.csv");
    CHECK(r.column("b") == 1);
    CHECK_THROWS_AS(r.column("c"), DatasetError);
    REQUIRE(r.next());
    try {
        r.real(1);
        FAIL("expected an error");
    } catch (const DatasetError& e) {
        CHECK(std::string(e.what()).find("t.csv:2") != std::string::npos);
    }
    CHECK_THROWS_AS(r.next(), DatasetError);
    CHECK_THROWS_AS(CsvReader(dir / "missing.csv"), DatasetError);
}
