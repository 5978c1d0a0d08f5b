#include "flow/calendar.hpp"

#include <cmath>
#include <numbers>

#include "flow/randomness.hpp"

namespace flow {

SimDate make_sim_date(Date start, int day_index) {
    using namespace std::chrono;
    SimDate d;
    d.date = add_days(start, day_index);
    d.day_index = day_index;
    // iso_encoding: Monday = 1 ... Sunday = 7.
    d.day_of_week = static_cast<Weekday>(weekday{sys_days{d.date}}.iso_encoding() - 1);
    const Date jan1{d.date.year(), January, std::chrono::day{1}};
    d.day_of_year = days_between(jan1, d.date) + 1;
    return d;
}

bool is_workday(const SimDate& d, const UserProfile& profile, std::uint64_t seed) {
    if (!is_weekend(d.day_of_week)) {
        return true;
    }
    const auto& spec = profession_spec(profile.profession);
    if (spec.schedule_pattern != SchedulePattern::rotating_shift) {
        return false;
    }
    const DayRng rng(seed, profile.user_id, d.day_index);
    return rng.bernoulli(channels::weekend_shift, spec.weekend_work_probability);
}

double season_factor_at(double day_of_year) {
    return std::cos(2.0 * std::numbers::pi * (day_of_year - 15.0) / 365.25);
}

double season_factor(const SimDate& d) { return season_factor_at(d.day_of_year); }

double cycle_phase(std::uint64_t seed, std::uint32_t user_id) {
    return 28.0 * uniform({seed, user_id, kStaticDay, channels::cycle_phase}, 0);
}

double workload_cycle_factor(const SimDate& d, std::uint32_t user_id, std::uint64_t seed) {
    return std::sin(2.0 * std::numbers::pi * (d.day_index + cycle_phase(seed, user_id)) / 28.0);
}

}  // namespace flow
