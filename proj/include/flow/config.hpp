#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flow/date.hpp"
#include "flow/enums.hpp"

namespace flow {

/// Standard deviations of the additive Gaussian noise on each daily variable.
struct NoiseScales {
    double work_hours = 0.8;
    double stress = 0.9;
    double sleep_hours = 0.6;
    double exercise = 15.0;
    double outdoor = 15.0;
    double caffeine = 40.0;
    double diet_quality = 0.8;
    double screen_time = 1.0;
    double mood = 0.8;
    double energy = 0.8;
    double focus = 0.8;
    double intake = 150.0;

    bool operator==(const NoiseScales&) const = default;
};

struct SensitivityParams {
    double stress_persistence = 0.6;
    double workload_to_stress = 0.8;
    double stress_to_sleep = 0.15;
    double stress_to_mood = 0.35;
    double sleep_to_mood = 0.4;
    double stress_overeat_gain = 0.04;
    double season_amplitude = 0.3;
    /// Lower bound on the workload index as it enters the stress update. Without
    /// it a day off (workload index near -7) would empty the stress state.
    double workload_floor = -0.5;
    NoiseScales noise;

    bool operator==(const SensitivityParams&) const = default;
};

struct InterventionTypeParams {
    double annual_rate = 0.0;
    int duration_min = 1;
    int duration_max = 1;
    double intensity_min = 0.0;
    double intensity_max = 1.0;
    double effect_probability = 0.7;

    bool operator==(const InterventionTypeParams&) const = default;
};

struct InterventionParams {
    std::array<InterventionTypeParams, kInterventionTypeCount> by_type{};

    const InterventionTypeParams& operator[](InterventionType t) const { return by_type[index_of(t)]; }
    InterventionTypeParams& operator[](InterventionType t) { return by_type[index_of(t)]; }

    bool operator==(const InterventionParams&) const = default;
};

struct GeneratorConfig {
    std::uint64_t seed = 42;
    std::uint32_t population_size = 1000;
    Date start_date = make_date(2024, 1, 1);
    Date end_date = make_date(2025, 12, 31);
    SensitivityParams sensitivities;
    InterventionParams intervention_params;
    std::array<double, kProfessionCount> profession_mix{};
    std::array<double, kWorkModeCount> work_mode_mix{};
    bool emit_denormalized = true;

    /// Number of simulated days, end date inclusive.
    int day_count() const { return days_between(start_date, end_date) + 1; }

    bool operator==(const GeneratorConfig&) const = default;
};

struct ConfigViolation {
    std::string field;
    std::string message;
};

/// Raised by load_config/parse_config. `field()` is empty for syntax errors.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

GeneratorConfig default_config();

std::vector<ConfigViolation> validate_config(const GeneratorConfig& config);

/// Parses a JSON object whose keys are dotted paths (nested objects are
/// flattened into the same paths). Unspecified keys keep their defaults.
GeneratorConfig parse_config(std::string_view text);

GeneratorConfig load_config(const std::filesystem::path& path);

/// Flat JSON document that parse_config reads back to an equal config.
std::string serialize_config(const GeneratorConfig& config);

/// FNV-1a digest of serialize_config, as 16 hex digits.
std::string config_digest(const GeneratorConfig& config);

/// Overrides the seed from FLOW_SEED when set. Throws ConfigError on a malformed value.
void apply_seed_environment(GeneratorConfig& config);

}  // namespace flow
