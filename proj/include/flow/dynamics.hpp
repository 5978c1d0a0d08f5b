#pragma once

// Daily simulation loop. Each day applies a fixed update order:
// pressure -> work -> stress -> lifestyle -> sleep -> sleep quality ->
// mood/energy/focus -> energy balance -> weight. Lifestyle runs before
// sleep because the night's sleep depends on the day's caffeine.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "flow/calendar.hpp"
#include "flow/config.hpp"
#include "flow/interventions.hpp"
#include "flow/population.hpp"
#include "flow/randomness.hpp"

namespace flow {

inline constexpr double kKcalPerKg = 7700.0;
inline constexpr double kMaxDailyWeightChangeKg = 0.3;
inline constexpr double kCriticalStressBonus = 0.8;
inline constexpr double kCycleStressWeight = 0.3;
inline constexpr double kInterventionStressRelief = 1.5;

struct DailyState {
    double stress = 0.0;
    double sleep_quality = 0.0;
    double weight_kg = 0.0;
    PressureState pressure = PressureState::normal;
    double prev_sleep_hours = 0.0;

    bool operator==(const DailyState&) const = default;
};

/// One emitted individual-day. Real fields hold exactly the values written to
/// CSV (see kDailyPrecision in export.hpp), so downstream aggregation sees the
/// same numbers as any reader of the files.
struct DailyRecord {
    std::uint32_t user_id = 0;
    Date date;
    bool is_workday = false;
    double work_hours = 0.0;
    unsigned meetings_count = 0;
    unsigned emails_received = 0;
    PressureState pressure_state = PressureState::normal;
    double stress_level = 0.0;
    double sleep_hours = 0.0;
    double sleep_quality = 0.0;
    double mood = 0.0;
    double energy = 0.0;
    double focus = 0.0;
    unsigned exercise_minutes = 0;
    unsigned outdoor_minutes = 0;
    unsigned caffeine_mg = 0;
    double diet_quality = 0.0;
    double screen_time_hours = 0.0;
    double calories_intake = 0.0;
    double calories_expended = 0.0;
    double weight_kg = 0.0;

    bool operator==(const DailyRecord&) const = default;
};

/// Rounds to `decimals` places, normalizing -0 to +0.
double quantize(double value, int decimals);

// --- pressure regime -------------------------------------------------------

using TransitionMatrix = std::array<std::array<double, 3>, 3>;

/// Row = current state, column = next state (normal, elevated, critical).
const TransitionMatrix& pressure_transition_matrix();

PressureState update_pressure(PressureState current, const RandomChannel& channel);

// --- work ------------------------------------------------------------------

struct WorkVars {
    double work_hours = 0.0;
    unsigned meetings_count = 0;
    unsigned emails_received = 0;

    bool operator==(const WorkVars&) const = default;
};

WorkVars gen_work_vars(const UserProfile& profile, bool is_workday, double cycle, PressureState pressure,
                       const ActiveModifiers& active, const SensitivityParams& params, const DayRng& rng);

/// (hours - base)/2 + (meetings - meeting_rate)/4 + (emails - email_rate)/30.
double workload_index(double work_hours, double meetings, double emails, const UserProfile& profile);

// --- stress and sleep ------------------------------------------------------

struct StressDrivers {
    double workload_index = 0.0;
    double season = 0.0;
    double cycle = 0.0;
    bool critical = false;
    double relief = 0.0;
};

/// Stress relief granted by the modifiers that fired today.
double intervention_relief(const ActiveModifiers& active);

double update_stress(double stress, double base_stress, const StressDrivers& drivers, const SensitivityParams& params,
                     const DayRng& rng);

double gen_sleep(double stress, unsigned caffeine_mg, bool is_workday, const UserProfile& profile,
                 const SensitivityParams& params, const DayRng& rng);

/// 0.9 Q + 0.1 (10 - |hours - 8| - 0.4 max(0, S - 5)), clamped to [0, 10].
double update_sleep_quality(double sleep_quality, double sleep_hours, double stress);

// --- lifestyle and affect --------------------------------------------------

struct Lifestyle {
    unsigned exercise_minutes = 0;
    unsigned outdoor_minutes = 0;
    unsigned caffeine_mg = 0;
    double diet_quality = 0.0;
    double screen_time_hours = 0.0;
};

Lifestyle gen_lifestyle(const UserProfile& profile, bool is_workday, double season, double stress,
                        PressureState pressure, double work_hours, const ActiveModifiers& active,
                        const SensitivityParams& params, const DayRng& rng);

struct Affect {
    double mood = 0.0;
    double energy = 0.0;
    double focus = 0.0;
};

Affect gen_mood_energy_focus(double sleep_hours, double sleep_quality, double stress, unsigned exercise_minutes,
                             double diet_quality, const ActiveModifiers& active, const SensitivityParams& params,
                             const DayRng& rng);

// --- energy balance --------------------------------------------------------

/// Mifflin-St Jeor basal metabolic rate, kcal/day.
double bmr(const UserProfile& profile, double weight_kg);

struct EnergyBalance {
    double intake_kcal = 0.0;
    double expended_kcal = 0.0;
};

EnergyBalance energy_balance(const UserProfile& profile, double weight_kg, double stress, unsigned exercise_minutes,
                             bool is_workday, double diet_quality, const SensitivityParams& params,
                             const DayRng& rng);

/// W + clamp((intake - expended) / 7700, -0.3, 0.3).
double update_weight(double weight_kg, double intake_kcal, double expended_kcal);

// --- driver ----------------------------------------------------------------

DailyState initial_state(const UserProfile& profile);

struct DayResult {
    DailyState state;
    DailyRecord record;
};

DayResult step_day(const DailyState& state, const UserProfile& profile, const SimDate& day,
                   const ActiveModifiers& active, const GeneratorConfig& config);

/// One record per day of the configured range, in date order.
std::vector<DailyRecord> simulate_user(const UserProfile& profile, std::span<const InterventionEvent> events,
                                       const GeneratorConfig& config);

}  // namespace flow
