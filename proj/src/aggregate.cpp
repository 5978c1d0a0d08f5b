#include "flow/aggregate.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace flow {

double job_satisfaction(double avg_stress, double avg_work_hours, int intervention_active_days) {
    return std::clamp(9.0 - 0.5 * avg_stress - 0.15 * std::max(0.0, avg_work_hours - 8.0) +
                          (intervention_active_days > 0 ? 0.3 : 0.0),
                      0.0, 10.0);
}

double anxiety_score(double avg_stress, double sleep_debt_hours) {
    return std::clamp(1.8 * avg_stress + 0.3 * sleep_debt_hours, 0.0, 21.0);
}

double depression_score(double avg_mood, double avg_energy) {
    return std::clamp(2.2 * (10.0 - avg_mood) * 0.9 + 0.5 * (10.0 - avg_energy), 0.0, 27.0);
}

WeeklySummary summarize_week(std::span<const DailyRecord> records, int week_index, Date week_start_date,
                             int intervention_active_days) {
    if (records.empty()) {
        throw std::invalid_argument("summarize_week: no records");
    }
    const std::uint32_t user = records.front().user_id;
    double stress = 0.0, sleep = 0.0, debt = 0.0, weight = 0.0, mood = 0.0, energy = 0.0, hours = 0.0;
    int low_diet = 0;
    for (const auto& r : records) {
        if (r.user_id != user) {
            throw std::invalid_argument(
                fmt::format("summarize_week: mixed users {} and {} in one week", user, r.user_id));
        }
        stress += r.stress_level;
        sleep += r.sleep_hours;
        debt += std::max(0.0, kSleepTargetHours - r.sleep_hours);
        weight += r.weight_kg;
        mood += r.mood;
        energy += r.energy;
        hours += r.work_hours;
        if (r.diet_quality < kLowDietThreshold) {
            ++low_diet;
        }
    }
    const double n = static_cast<double>(records.size());

    WeeklySummary w;
    w.user_id = user;
    w.week_index = week_index;
    w.week_start_date = week_start_date;
    w.days_covered = static_cast<int>(records.size());
    w.avg_stress = stress / n;
    w.avg_sleep_hours = sleep / n;
    w.sleep_debt_hours = debt;
    w.job_satisfaction = job_satisfaction(w.avg_stress, hours / n, intervention_active_days);
    w.anxiety_score = anxiety_score(w.avg_stress, debt);
    w.depression_score = depression_score(mood / n, energy / n);
    w.avg_weight_kg = weight / n;
    w.low_diet_days = low_diet;
    return w;
}

std::vector<WeeklySummary> summarize_user(std::span<const DailyRecord> records,
                                          std::span<const InterventionEvent> events, Date start_date) {
    std::vector<WeeklySummary> out;
    out.reserve((records.size() + 6) / 7);
    for (std::size_t first = 0; first < records.size(); first += 7) {
        const auto block = records.subspan(first, std::min<std::size_t>(7, records.size() - first));
        int covered = 0;
        for (const auto& r : block) {
            if (std::any_of(events.begin(), events.end(), [&](const InterventionEvent& e) { return e.covers(r.date); })) {
                ++covered;
            }
        }
        const int week = static_cast<int>(first / 7);
        out.push_back(summarize_week(block, week, add_days(start_date, 7 * week), covered));
    }
    return out;
}

}  // namespace flow
