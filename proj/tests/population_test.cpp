#include <array>
#include <cmath>

#include "doctest.h"
#include "flow/population.hpp"

using namespace flow;

TEST_CASE("profession table") {
    const auto table = profession_table();
    REQUIRE(table.size() == kProfessionCount);
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(index_of(table[i].profession) == i);
        CHECK(table[i].base_work_hours > 0.0);
        CHECK(table[i].meeting_rate >= 0.0);
        CHECK(table[i].email_rate >= 0.0);
    }
    CHECK(profession_spec(Profession::nurse).schedule_pattern == SchedulePattern::rotating_shift);
    CHECK(profession_spec(Profession::nurse).weekend_work_probability == 0.4);
    CHECK(profession_spec(Profession::manager).schedule_pattern == SchedulePattern::standard_weekday);
    CHECK(profession_spec(Profession::manager).base_work_hours == 8.5);
}

TEST_CASE("population size and subset stability") {
    auto config = default_config();
    const auto full = sample_population(config);
    REQUIRE(full.size() == 1000);
    config.population_size = 10;
    const auto small = sample_population(config);
    REQUIRE(small.size() == 10);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(small[i] == full[i]);
        CHECK(full[i].user_id == i + 1);
    }
}

TEST_CASE("profile invariants") {
    const auto config = default_config();
    for (const auto& p : sample_population(config)) {
        CHECK(p.baseline_weight_kg == p.baseline_bmi * (p.height_cm / 100.0) * (p.height_cm / 100.0));
        CHECK(p.age >= 22);
        CHECK(p.age <= 65);
        CHECK(p.height_cm >= 145.0);
        CHECK(p.height_cm <= 205.0);
        CHECK(p.baseline_bmi >= 17.0);
        CHECK(p.baseline_bmi <= 40.0);
        for (double t : {p.activity_tendency, p.diet_tendency, p.caffeine_tendency}) {
            CHECK(t >= 0.0);
            CHECK(t <= 1.0);
        }
        CHECK(p.base_stress >= 0.0);
        CHECK(p.base_stress <= 10.0);
    }
}

TEST_CASE("profession frequencies follow the mix") {
    auto config = default_config();
    config.profession_mix = {4.0, 3.0, 1.0, 1.0, 1.0};
    std::array<int, kProfessionCount> counts{};
    for (const auto& p : sample_population(config)) ++counts[index_of(p.profession)];
    for (std::size_t i = 0; i < kProfessionCount; ++i) {
        CAPTURE(i);
        CHECK(std::abs(counts[i] / 1000.0 - config.profession_mix[i] / 10.0) <= 0.03);
    }

    config.profession_mix = {0.0, 0.0, 1.0, 0.0, 0.0};
    for (const auto& p : sample_population(config)) CHECK(p.profession == Profession::nurse);
}

TEST_CASE("profiles of different users differ") {
    const auto config = default_config();
    int distinct = 0;
    for (std::uint32_t id = 1; id <= 1000; ++id) {
        distinct += !(sample_profile(config.seed, id, config) == sample_profile(config.seed, id + 1000, config));
    }
    CHECK(distinct / 1000.0 > 0.99);
    CHECK(sample_profile(1, 5, config) == sample_profile(1, 5, config));
    CHECK_FALSE(sample_profile(1, 5, config) == sample_profile(2, 5, config));
}
