#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flow/date.hpp"
#include "flow/dynamics.hpp"
#include "flow/interventions.hpp"

namespace flow {

inline constexpr double kSleepTargetHours = 8.0;
inline constexpr double kLowDietThreshold = 4.0;

struct WeeklySummary {
    std::uint32_t user_id = 0;
    int week_index = 0;
    Date week_start_date;
    int days_covered = 0;
    double avg_stress = 0.0;
    double avg_sleep_hours = 0.0;
    double sleep_debt_hours = 0.0;
    double job_satisfaction = 0.0;
    double anxiety_score = 0.0;
    double depression_score = 0.0;
    double avg_weight_kg = 0.0;
    int low_diet_days = 0;

    bool operator==(const WeeklySummary&) const = default;
};

double job_satisfaction(double avg_stress, double avg_work_hours, int intervention_active_days);
double anxiety_score(double avg_stress, double sleep_debt_hours);
double depression_score(double avg_mood, double avg_energy);

/// Summarizes one anchored week of a single user's chronological records.
/// `intervention_active_days` counts days of the block covered by any event.
/// Throws std::invalid_argument on empty input or mixed users.
WeeklySummary summarize_week(std::span<const DailyRecord> records, int week_index, Date week_start_date,
                             int intervention_active_days);

/// All weekly blocks for one user's full record series, anchored at `start_date`.
std::vector<WeeklySummary> summarize_user(std::span<const DailyRecord> records,
                                          std::span<const InterventionEvent> events, Date start_date);

}  // namespace flow
