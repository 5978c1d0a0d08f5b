#pragma once

#include <cstdint>

#include "flow/date.hpp"
#include "flow/population.hpp"

namespace flow {

enum class Weekday { mon, tue, wed, thu, fri, sat, sun };

struct SimDate {
    Date date;
    int day_index = 0;
    Weekday day_of_week = Weekday::mon;
    int day_of_year = 1;
};

/// Calendar position of day `day_index` counted from `start`.
SimDate make_sim_date(Date start, int day_index);

inline bool is_weekend(Weekday d) { return d == Weekday::sat || d == Weekday::sun; }

/// Mon-Fri always; weekends only for rotating-shift professions, with their
/// weekend_work_probability drawn per (user, day).
bool is_workday(const SimDate& d, const UserProfile& profile, std::uint64_t seed);

/// cos(2 pi (day_of_year - 15) / 365.25): +1 in mid-January, about -1 in mid-July.
double season_factor(const SimDate& d);
double season_factor_at(double day_of_year);

/// Per-user offset in [0, 28) for the workload cycle.
double cycle_phase(std::uint64_t seed, std::uint32_t user_id);

/// sin(2 pi (day_index + phase) / 28).
double workload_cycle_factor(const SimDate& d, std::uint32_t user_id, std::uint64_t seed);

/// 7-day blocks anchored at the start date.
inline int week_index(const SimDate& d) { return d.day_index / 7; }

inline int week_count(int day_count) { return (day_count + 6) / 7; }

}  // namespace flow
