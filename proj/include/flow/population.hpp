#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "flow/config.hpp"
#include "flow/enums.hpp"

namespace flow {

struct ProfessionSpec {
    Profession profession;
    std::string_view name;
    double base_work_hours;
    double meeting_rate;
    double email_rate;
    SchedulePattern schedule_pattern;
    double weekend_work_probability;
};

/// Built-in profession table, indexed by Profession.
std::span<const ProfessionSpec> profession_table();

const ProfessionSpec& profession_spec(Profession profession);

struct UserProfile {
    std::uint32_t user_id = 0;
    int age = 0;
    Sex sex = Sex::female;
    double height_cm = 0.0;
    Profession profession = Profession::manager;
    WorkMode work_mode = WorkMode::remote;
    Chronotype chronotype = Chronotype::intermediate;
    double baseline_bmi = 0.0;
    double baseline_weight_kg = 0.0;
    double activity_tendency = 0.0;
    double diet_tendency = 0.0;
    double caffeine_tendency = 0.0;
    double base_stress = 0.0;
    double base_sleep_hours = 0.0;

    bool operator==(const UserProfile&) const = default;
};

/// Profile of one user; depends only on (seed, user_id) and the mix weights.
UserProfile sample_profile(std::uint64_t seed, std::uint32_t user_id, const GeneratorConfig& config);

/// Users 1..population_size.
std::vector<UserProfile> sample_population(const GeneratorConfig& config);

}  // namespace flow
