#include <algorithm>
#include <array>
#include <cmath>

#include "doctest.h"
#include "flow/calendar.hpp"
#include "flow/dynamics.hpp"
#include "flow/interventions.hpp"

using namespace flow;

namespace {

SensitivityParams zero_noise() {
    SensitivityParams p;
    p.noise = NoiseScales{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    return p;
}

UserProfile person(Sex sex, double weight, double height, int age) {
    UserProfile u;
    u.user_id = 1;
    u.sex = sex;
    u.baseline_weight_kg = weight;
    u.height_cm = height;
    u.age = age;
    u.profession = Profession::manager;
    u.work_mode = WorkMode::remote;
    u.chronotype = Chronotype::intermediate;
    u.base_stress = 5.0;
    u.base_sleep_hours = 7.2;
    u.activity_tendency = 0.5;
    u.diet_tendency = 0.5;
    u.caffeine_tendency = 0.5;
    return u;
}

const DayRng kRng(42, 1, 0);

}  // namespace

TEST_CASE("Mifflin-St Jeor") {
    CHECK(bmr(person(Sex::male, 80, 180, 40), 80) == 1730.0);
    CHECK(bmr(person(Sex::female, 65, 165, 30), 65) == 1370.25);
}

TEST_CASE("weight update") {
    CHECK(update_weight(70.0, 2000.0, 2000.0) == 70.0);
    CHECK(quantize(update_weight(70.0, 2200.0, 2000.0) - 70.0, 6) == 0.025974);
    CHECK(update_weight(70.0, 9000.0, 2000.0) == doctest::Approx(70.3));
    CHECK(update_weight(70.0, 500.0, 5000.0) == doctest::Approx(69.7));
}

TEST_CASE("quantize matches decimal formatting") {
    CHECK(quantize(2.675, 2) == 2.67);  // 2.675 is stored slightly below the midpoint
    CHECK(quantize(-0.001, 2) == 0.0);
    CHECK_FALSE(std::signbit(quantize(-0.001, 2)));
    CHECK(quantize(65.1234565, 6) == 65.123457);
}

TEST_CASE("pressure regime") {
    const auto& m = pressure_transition_matrix();
    for (const auto& row : m) CHECK(row[0] + row[1] + row[2] == doctest::Approx(1.0));
    CHECK(m[0][2] == 0.0);
    CHECK(m[2][0] == 0.0);

    PressureState s = PressureState::normal;
    int critical = 0;
    const int steps = 100000;
    for (int t = 0; t < steps; ++t) {
        s = update_pressure(s, {42, 1, t, channels::pressure_transition});
        critical += s == PressureState::critical;
    }
    const double f = static_cast<double>(critical) / steps;
    CHECK(f >= 0.03);
    CHECK(f <= 0.07);
}

TEST_CASE("work variables") {
    const auto manager = person(Sex::male, 80, 180, 40);
    const ActiveModifiers none{};
    const auto quiet = zero_noise();
    CHECK(gen_work_vars(manager, false, 0.3, PressureState::critical, none, quiet, kRng) == WorkVars{});
    CHECK(gen_work_vars(manager, true, 0.0, PressureState::normal, none, quiet, kRng).work_hours == 8.5);

    ActiveModifiers capped{};
    capped[InterventionType::workload_cap] = {true, 0.4, true};
    CHECK(gen_work_vars(manager, true, 0.0, PressureState::normal, capped, quiet, kRng).work_hours ==
          doctest::Approx(8.5 * 0.9));

    const SensitivityParams params;
    double normal = 0, critical = 0;
    for (int day = 0; day < 10000; ++day) {
        const DayRng rng(42, 1, day);
        normal += gen_work_vars(manager, true, 0.0, PressureState::normal, none, params, rng).work_hours;
        critical += gen_work_vars(manager, true, 0.0, PressureState::critical, none, params, rng).work_hours;
    }
    CHECK(critical > normal);
}

TEST_CASE("workload index") {
    const auto manager = person(Sex::male, 80, 180, 40);
    const auto& spec = profession_spec(Profession::manager);
    CHECK(workload_index(spec.base_work_hours, spec.meeting_rate, spec.email_rate, manager) == 0.0);
    CHECK(workload_index(spec.base_work_hours + 2, spec.meeting_rate, spec.email_rate, manager) == 1.0);
    CHECK(workload_index(0, 0, 0, manager) < 0.0);
}

TEST_CASE("stress update") {
    const auto quiet = zero_noise();
    CHECK(update_stress(4.0, 4.0, StressDrivers{}, quiet, kRng) == doctest::Approx(4.0));
    StressDrivers heavy{20.0, 1.0, 1.0, true, 0.0};
    CHECK(update_stress(10.0, 10.0, heavy, SensitivityParams{}, kRng) <= 10.0);
    CHECK(update_stress(0.0, 0.0, StressDrivers{-20.0, -1, -1, false, 5.0}, SensitivityParams{}, kRng) >= 0.0);

    // A day off pulls stress down only as far as the workload floor allows.
    StressDrivers off{-7.0, 0, 0, false, 0};
    CHECK(update_stress(5.0, 5.0, off, quiet, kRng) == doctest::Approx(5.0 + 0.8 * quiet.workload_floor));

    ActiveModifiers vacation{};
    vacation[InterventionType::vacation] = {true, 0.5, true};
    CHECK(intervention_relief(vacation) == doctest::Approx(0.75));
    vacation[InterventionType::vacation].fires = false;
    CHECK(intervention_relief(vacation) == 0.0);
}

TEST_CASE("sleep") {
    auto u = person(Sex::female, 65, 165, 30);
    const auto quiet = zero_noise();
    CHECK(gen_sleep(5.0, 0, true, u, quiet, kRng) == doctest::Approx(7.2));
    CHECK(gen_sleep(9.0, 0, true, u, quiet, kRng) < gen_sleep(5.0, 0, true, u, quiet, kRng));
    CHECK(gen_sleep(5.0, 200, true, u, quiet, kRng) == doctest::Approx(6.9));
    CHECK(gen_sleep(5.0, 0, false, u, quiet, kRng) == doctest::Approx(7.7));
    u.chronotype = Chronotype::late;
    CHECK(gen_sleep(5.0, 0, true, u, quiet, kRng) == doctest::Approx(6.9));

    double q = 5.0;
    for (int i = 0; i < 200; ++i) {
        const double next = update_sleep_quality(q, 8.0, 4.0);
        CHECK(next >= q);
        q = next;
    }
    CHECK(q == doctest::Approx(10.0).epsilon(1e-6));
    CHECK(std::abs(update_sleep_quality(5.0, 3.0, 10.0) - 5.0) <= 1.0);
}

TEST_CASE("lifestyle") {
    const auto u = person(Sex::male, 80, 180, 40);
    const SensitivityParams params;
    const ActiveModifiers none{};
    double work_outdoor = 0, off_outdoor = 0;
    for (int day = 0; day < 5000; ++day) {
        const DayRng rng(42, 1, day);
        work_outdoor += gen_lifestyle(u, true, 0.0, 5.0, PressureState::normal, 8.5, none, params, rng).outdoor_minutes;
        off_outdoor += gen_lifestyle(u, false, 0.0, 5.0, PressureState::normal, 0.0, none, params, rng).outdoor_minutes;
    }
    CHECK(off_outdoor > work_outdoor);

    ActiveModifiers sick{};
    sick[InterventionType::sick_leave] = {true, 0.0, true};
    for (int day = 0; day < 200; ++day) {
        const DayRng rng(42, 1, day);
        CHECK(gen_lifestyle(u, false, 0.0, 5.0, PressureState::normal, 0.0, sick, params, rng).exercise_minutes <= 15);
    }

    const auto quiet = zero_noise();
    ActiveModifiers program{};
    program[InterventionType::lifestyle_program] = {true, 0.5, true};
    const auto base = gen_lifestyle(u, true, 0.0, 5.0, PressureState::normal, 8.0, none, quiet, kRng);
    const auto boosted = gen_lifestyle(u, true, 0.0, 5.0, PressureState::normal, 8.0, program, quiet, kRng);
    CHECK(boosted.exercise_minutes == base.exercise_minutes + 10);
    CHECK(boosted.diet_quality == doctest::Approx(base.diet_quality + 0.25));
}

TEST_CASE("affect") {
    const auto quiet = zero_noise();
    const ActiveModifiers none{};
    const auto a = gen_mood_energy_focus(7.0, 5.0, 5.0, 0, 5.0, none, quiet, kRng);
    CHECK(a.mood == doctest::Approx(5.0));
    CHECK(a.energy == doctest::Approx(5.0));
    CHECK(a.focus == doctest::Approx(5.0));
    CHECK(gen_mood_energy_focus(7.0, 5.0, 8.0, 0, 5.0, none, quiet, kRng).mood < a.mood);
    CHECK(gen_mood_energy_focus(7.0, 5.0, 5.0, 60, 5.0, none, quiet, kRng).mood > a.mood);

    ActiveModifiers sick{};
    sick[InterventionType::sick_leave] = {true, 0.3, true};
    CHECK(gen_mood_energy_focus(7.0, 5.0, 5.0, 0, 5.0, sick, quiet, kRng).energy == doctest::Approx(4.0));
}

TEST_CASE("energy balance") {
    const auto u = person(Sex::male, 80, 180, 40);
    const auto quiet = zero_noise();
    const auto maintenance = energy_balance(u, 80, 6.0, 0, true, 5.0, quiet, kRng);
    CHECK(maintenance.intake_kcal == doctest::Approx(maintenance.expended_kcal));
    CHECK(maintenance.expended_kcal == doctest::Approx(1730.0 * 1.2));

    auto onsite = u;
    onsite.work_mode = WorkMode::onsite;
    CHECK(energy_balance(onsite, 80, 5.0, 0, false, 5.0, quiet, kRng).expended_kcal ==
          doctest::Approx(1730.0 * 1.2 + 80));
    auto hybrid = u;
    hybrid.work_mode = WorkMode::hybrid;
    CHECK(energy_balance(hybrid, 80, 5.0, 0, true, 5.0, quiet, kRng).expended_kcal ==
          doctest::Approx(1730.0 * 1.2 + 40));
    CHECK(energy_balance(hybrid, 80, 5.0, 0, false, 5.0, quiet, kRng).expended_kcal ==
          doctest::Approx(1730.0 * 1.2));

    // Chronic high stress yields a daily surplus and a rising weight.
    double w = 80.0;
    for (int day = 0; day < 60; ++day) {
        const auto eb = energy_balance(u, w, 9.0, 0, true, 5.0, quiet, kRng);
        CHECK(eb.intake_kcal > eb.expended_kcal);
        w = update_weight(w, eb.intake_kcal, eb.expended_kcal);
    }
    CHECK(w > 80.5);
}

TEST_CASE("step_day") {
    auto config = default_config();
    const auto u = person(Sex::male, 80, 180, 40);
    const Date start = config.start_date;
    const auto saturday = make_sim_date(start, 5);
    REQUIRE(saturday.day_of_week == Weekday::sat);
    const ActiveModifiers none{};
    const auto weekend = step_day(initial_state(u), u, saturday, none, config);
    CHECK(weekend.record.work_hours == 0.0);
    CHECK(weekend.record.meetings_count == 0);
    CHECK_FALSE(weekend.record.is_workday);

    DailyState stressed = initial_state(u);
    stressed.stress = 10.0;
    stressed.pressure = PressureState::critical;
    for (int i = 0; i < 50; ++i) {
        const auto r = step_day(stressed, u, make_sim_date(start, i), none, config);
        CHECK(r.record.stress_level <= 10.0);
        CHECK(r.record.stress_level >= 0.0);
    }

    const auto a = step_day(initial_state(u), u, make_sim_date(start, 2), none, config);
    const auto b = step_day(initial_state(u), u, make_sim_date(start, 2), none, config);
    CHECK(a.record == b.record);
    CHECK(a.state == b.state);

    ActiveModifiers vacation{};
    vacation[InterventionType::vacation] = {true, 0.3, false};
    CHECK_FALSE(step_day(initial_state(u), u, make_sim_date(start, 2), vacation, config).record.is_workday);
}

TEST_CASE("simulate_user") {
    auto config = default_config();
    const auto u = sample_profile(config.seed, 3, config);
    const auto records = simulate_user(u, {}, config);
    REQUIRE(records.size() == 731);
    CHECK(records.front().date == config.start_date);
    CHECK(records.back().date == config.end_date);
    CHECK(simulate_user(u, {}, config) == records);

    double balance = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        balance += std::clamp((r.calories_intake - r.calories_expended) / kKcalPerKg, -0.3, 0.3);
        if (i > 0) CHECK(std::abs(r.weight_kg - records[i - 1].weight_kg) <= 0.3 + 1e-6);
    }
    CHECK(std::abs(records.back().weight_kg - quantize(u.baseline_weight_kg, 6) - balance) <= 1e-6);

    config.sensitivities.noise = zero_noise().noise;
    const auto quiet = simulate_user(u, {}, config);
    CHECK(simulate_user(u, {}, config) == quiet);
}
