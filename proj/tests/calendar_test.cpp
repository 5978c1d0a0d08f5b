#include <cmath>
#include <set>

#include "doctest.h"
#include "flow/calendar.hpp"

using namespace flow;

namespace {

UserProfile profile_of(Profession p, std::uint32_t id = 1) {
    UserProfile u;
    u.user_id = id;
    u.profession = p;
    return u;
}

}  // namespace

TEST_CASE("sim dates") {
    const Date start = make_date(2024, 1, 1);
    const auto d0 = make_sim_date(start, 0);
    CHECK(d0.day_of_week == Weekday::mon);
    CHECK(d0.day_of_year == 1);
    const auto last = make_sim_date(start, 730);
    CHECK(last.date == make_date(2025, 12, 31));
    CHECK(last.day_of_year == 365);
    CHECK(make_sim_date(start, 365).day_of_year == 366);
}

TEST_CASE("week_index") {
    const Date start = make_date(2024, 1, 1);
    CHECK(week_index(make_sim_date(start, days_between(start, make_date(2024, 1, 1)))) == 0);
    CHECK(week_index(make_sim_date(start, days_between(start, make_date(2024, 1, 7)))) == 0);
    CHECK(week_index(make_sim_date(start, days_between(start, make_date(2024, 1, 8)))) == 1);
    CHECK(week_index(make_sim_date(start, days_between(start, make_date(2025, 12, 31)))) == 104);
    CHECK(week_count(731) == 105);
    CHECK(week_count(7) == 1);
    CHECK(week_count(8) == 2);
}

TEST_CASE("workdays") {
    const Date start = make_date(2024, 1, 1);
    const auto saturday = make_sim_date(start, days_between(start, make_date(2024, 1, 6)));
    const auto wednesday = make_sim_date(start, days_between(start, make_date(2024, 1, 3)));
    CHECK(saturday.day_of_week == Weekday::sat);
    CHECK_FALSE(is_workday(saturday, profile_of(Profession::manager), 42));
    for (Profession p : kAllProfessions) CHECK(is_workday(wednesday, profile_of(p), 42));

    int saturdays = 0, worked = 0;
    for (std::uint32_t user = 1; user <= 20; ++user) {
        for (int i = 0; i < 731; ++i) {
            const auto d = make_sim_date(start, i);
            if (d.day_of_week != Weekday::sat) continue;
            ++saturdays;
            worked += is_workday(d, profile_of(Profession::nurse, user), 42);
        }
    }
    const double f = static_cast<double>(worked) / saturdays;
    CHECK(f >= 0.3);
    CHECK(f <= 0.5);
}

TEST_CASE("season factor") {
    CHECK(season_factor_at(15.0) == doctest::Approx(1.0));
    CHECK(season_factor_at(15.0 + 365.25 / 2) == doctest::Approx(-1.0));
    CHECK(season_factor_at(197.6) == doctest::Approx(-1.0).epsilon(1e-4));
    for (int doy = 1; doy <= 366; ++doy) {
        CHECK(std::abs(season_factor_at(doy)) <= 1.0);
    }
}

TEST_CASE("workload cycle") {
    const Date start = make_date(2024, 1, 1);
    CHECK(workload_cycle_factor(make_sim_date(start, 0), 3, 42) ==
          doctest::Approx(workload_cycle_factor(make_sim_date(start, 28), 3, 42)));
    double sum = 0.0;
    for (int i = 0; i < 28; ++i) sum += workload_cycle_factor(make_sim_date(start, i), 3, 42);
    CHECK(std::abs(sum / 28) <= 0.05);

    std::set<double> phases;
    for (std::uint32_t u = 1; u <= 100; ++u) {
        const double phase = cycle_phase(42, u);
        CHECK(phase >= 0.0);
        CHECK(phase < 28.0);
        phases.insert(phase);
    }
    CHECK(phases.size() > 1);
}
