#include "flow/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace flow {

namespace {

constexpr TransitionMatrix kPressureTransitions = {{
    {0.92, 0.08, 0.00},
    {0.25, 0.65, 0.10},
    {0.00, 0.40, 0.60},
}};

constexpr std::array<double, 3> kPressureHoursBump = {0.0, 0.1, 0.25};

constexpr double kSleepDebtTarget = 8.0;  // hours; also the sleep-quality optimum
constexpr double kMinIntakeKcal = 500.0;

double chrono_shift(Chronotype c) {
    switch (c) {
        case Chronotype::early:
            return 0.2;
        case Chronotype::intermediate:
            return 0.0;
        case Chronotype::late:
            return -0.3;
    }
    return 0.0;
}

unsigned round_count(double v) { return static_cast<unsigned>(std::lround(std::max(0.0, v))); }

double above(double stress, double threshold) { return std::max(0.0, stress - threshold); }

}  // namespace

double quantize(double value, int decimals) {
    // Round through the same decimal formatting the CSV writer uses, so a
    // quantized value always equals what a reader parses back.
    char buf[64];
    const auto end = fmt::format_to_n(buf, sizeof buf, "{:.{}f}", value + 0.0, decimals).out;
    double out = 0.0;
    std::from_chars(buf, end, out);
    return out + 0.0;
}

const TransitionMatrix& pressure_transition_matrix() { return kPressureTransitions; }

PressureState update_pressure(PressureState current, const RandomChannel& channel) {
    const auto& row = kPressureTransitions[index_of(current)];
    return kAllPressureStates[categorical(channel, 0, row)];
}

WorkVars gen_work_vars(const UserProfile& profile, bool is_workday, double cycle, PressureState pressure,
                       const ActiveModifiers& active, const SensitivityParams& params, const DayRng& rng) {
    if (!is_workday) {
        return {};
    }
    const auto& spec = profession_spec(profile.profession);
    double hours = spec.base_work_hours * (1.0 + 0.1 * cycle + kPressureHoursBump[index_of(pressure)]) +
                   rng.normal(channels::work_hours_noise, 0.0, params.noise.work_hours);
    hours *= 1.0 - 0.25 * active[InterventionType::workload_cap].effect();
    hours = std::clamp(hours, 0.0, 16.0);

    const double scale = hours / spec.base_work_hours;
    WorkVars out;
    out.work_hours = hours;
    out.meetings_count = rng.poisson(channels::meetings_count, spec.meeting_rate * scale);
    out.emails_received = rng.poisson(channels::emails_received, spec.email_rate * scale);
    return out;
}

double workload_index(double work_hours, double meetings, double emails, const UserProfile& profile) {
    const auto& spec = profession_spec(profile.profession);
    return (work_hours - spec.base_work_hours) / 2.0 + (meetings - spec.meeting_rate) / 4.0 +
           (emails - spec.email_rate) / 30.0;
}

double intervention_relief(const ActiveModifiers& active) {
    return kInterventionStressRelief * (active[InterventionType::vacation].effect() +
                                        active[InterventionType::sick_leave].effect() +
                                        active[InterventionType::lifestyle_program].effect());
}

double update_stress(double stress, double base_stress, const StressDrivers& d, const SensitivityParams& params,
                     const DayRng& rng) {
    const double rho = params.stress_persistence;
    const double workload = std::max(d.workload_index, params.workload_floor);
    const double next = rho * stress + (1.0 - rho) * base_stress + params.workload_to_stress * workload +
                        params.season_amplitude * d.season + kCycleStressWeight * d.cycle +
                        (d.critical ? kCriticalStressBonus : 0.0) - d.relief +
                        rng.normal(channels::stress_noise, 0.0, params.noise.stress);
    return std::clamp(next, 0.0, 10.0);
}

double gen_sleep(double stress, unsigned caffeine_mg, bool is_workday, const UserProfile& profile,
                 const SensitivityParams& params, const DayRng& rng) {
    const double hours = profile.base_sleep_hours + chrono_shift(profile.chronotype) -
                         params.stress_to_sleep * above(stress, 5.0) - 0.0015 * caffeine_mg +
                         (is_workday ? 0.0 : 0.5) + rng.normal(channels::sleep_noise, 0.0, params.noise.sleep_hours);
    return std::clamp(hours, 3.0, 12.0);
}

double update_sleep_quality(double sleep_quality, double sleep_hours, double stress) {
    const double target = 10.0 - std::abs(sleep_hours - kSleepDebtTarget) - 0.4 * above(stress, 5.0);
    return std::clamp(0.9 * sleep_quality + 0.1 * target, 0.0, 10.0);
}

Lifestyle gen_lifestyle(const UserProfile& profile, bool is_workday, double season, double stress,
                        PressureState pressure, double work_hours, const ActiveModifiers& active,
                        const SensitivityParams& params, const DayRng& rng) {
    const auto& noise = params.noise;
    const double critical = pressure == PressureState::critical ? 1.0 : 0.0;
    const double day_off = is_workday ? 0.0 : 1.0;
    const double program = active[InterventionType::lifestyle_program].effect();

    double exercise = std::clamp(60.0 * profile.activity_tendency * (1.0 - 0.5 * critical) + 15.0 * day_off +
                                     20.0 * program + rng.normal(channels::exercise_noise, 0.0, noise.exercise),
                                 0.0, 240.0);
    if (active[InterventionType::sick_leave].fired()) {
        exercise = std::min(exercise, 15.0);
    }

    Lifestyle out;
    out.exercise_minutes = round_count(exercise);
    out.outdoor_minutes = round_count(std::clamp(
        30.0 + 40.0 * day_off - 20.0 * season + rng.normal(channels::outdoor_noise, 0.0, noise.outdoor), 0.0, 480.0));
    out.caffeine_mg = round_count(std::clamp(150.0 + 250.0 * profile.caffeine_tendency + 20.0 * above(stress, 5.0) +
                                                 rng.normal(channels::caffeine_noise, 0.0, noise.caffeine),
                                             0.0, 800.0));
    out.diet_quality = std::clamp(4.0 + 4.0 * profile.diet_tendency - 0.3 * above(stress, 5.0) - 0.8 * critical +
                                      0.5 * program + rng.normal(channels::diet_noise, 0.0, noise.diet_quality),
                                  0.0, 10.0);
    out.screen_time_hours =
        std::clamp(3.0 + 0.3 * work_hours + rng.normal(channels::screen_noise, 0.0, noise.screen_time), 0.0, 16.0);
    return out;
}

Affect gen_mood_energy_focus(double sleep_hours, double sleep_quality, double stress, unsigned exercise_minutes,
                             double diet_quality, const ActiveModifiers& active, const SensitivityParams& params,
                             const DayRng& rng) {
    const auto& noise = params.noise;
    const double exercise = exercise_minutes;
    const double sick = active[InterventionType::sick_leave].fired() ? 1.0 : 0.0;

    Affect out;
    out.mood = std::clamp(5.0 + params.sleep_to_mood * (sleep_hours - 7.0) - params.stress_to_mood * (stress - 5.0) +
                              0.01 * exercise + 0.1 * (diet_quality - 5.0) +
                              rng.normal(channels::mood_noise, 0.0, noise.mood),
                          0.0, 10.0);
    out.energy = std::clamp(5.0 + 0.5 * (sleep_hours - 7.0) + 0.2 * (sleep_quality - 5.0) - 0.25 * (stress - 5.0) +
                                0.008 * exercise - 1.0 * sick + rng.normal(channels::energy_noise, 0.0, noise.energy),
                            0.0, 10.0);
    out.focus = std::clamp(5.0 + 0.3 * (sleep_hours - 7.0) - 0.35 * (stress - 5.0) + 0.15 * (sleep_quality - 5.0) +
                               rng.normal(channels::focus_noise, 0.0, noise.focus),
                           0.0, 10.0);
    return out;
}

double bmr(const UserProfile& profile, double weight_kg) {
    const double sex_term = profile.sex == Sex::male ? 5.0 : -161.0;
    return 10.0 * weight_kg + 6.25 * profile.height_cm - 5.0 * profile.age + sex_term;
}

EnergyBalance energy_balance(const UserProfile& profile, double weight_kg, double stress, unsigned exercise_minutes,
                             bool is_workday, double diet_quality, const SensitivityParams& params,
                             const DayRng& rng) {
    double expended = bmr(profile, weight_kg) * 1.2 + 6.0 * exercise_minutes;
    if (profile.work_mode == WorkMode::onsite) {
        expended += 80.0;
    } else if (profile.work_mode == WorkMode::hybrid && is_workday) {
        expended += 40.0;
    }
    const double appetite = 1.0 + params.stress_overeat_gain * above(stress, 6.0) - 0.01 * (diet_quality - 5.0);
    const double intake = expended * appetite + rng.normal(channels::intake_noise, 0.0, params.noise.intake);
    return {std::max(intake, kMinIntakeKcal), expended};
}

double update_weight(double weight_kg, double intake_kcal, double expended_kcal) {
    return weight_kg +
           std::clamp((intake_kcal - expended_kcal) / kKcalPerKg, -kMaxDailyWeightChangeKg, kMaxDailyWeightChangeKg);
}

DailyState initial_state(const UserProfile& profile) {
    DailyState s;
    s.stress = profile.base_stress;
    s.sleep_quality = std::clamp(10.0 - std::abs(profile.base_sleep_hours - kSleepDebtTarget), 0.0, 10.0);
    // Start from the weight as written to users.csv so the weight trajectory is
    // reproducible from the files alone.
    s.weight_kg = quantize(profile.baseline_weight_kg, 6);
    s.pressure = PressureState::normal;
    s.prev_sleep_hours = profile.base_sleep_hours;
    return s;
}

DayResult step_day(const DailyState& state, const UserProfile& profile, const SimDate& day,
                   const ActiveModifiers& active, const GeneratorConfig& config) {
    const auto& params = config.sensitivities;
    const DayRng rng(config.seed, profile.user_id, day.day_index);

    const bool workday = !active.forces_absence() && is_workday(day, profile, config.seed);
    const PressureState pressure = update_pressure(state.pressure, rng.channel(channels::pressure_transition));
    const double cycle = workload_cycle_factor(day, profile.user_id, config.seed);
    const double season = season_factor(day);

    const WorkVars work = gen_work_vars(profile, workday, cycle, pressure, active, params, rng);
    const StressDrivers drivers{
        workload_index(work.work_hours, work.meetings_count, work.emails_received, profile), season, cycle,
        pressure == PressureState::critical, intervention_relief(active)};
    const double stress = update_stress(state.stress, profile.base_stress, drivers, params, rng);

    const Lifestyle life =
        gen_lifestyle(profile, workday, season, stress, pressure, work.work_hours, active, params, rng);
    const double sleep = gen_sleep(stress, life.caffeine_mg, workday, profile, params, rng);
    const double quality = update_sleep_quality(state.sleep_quality, sleep, stress);
    const Affect affect =
        gen_mood_energy_focus(sleep, quality, stress, life.exercise_minutes, life.diet_quality, active, params, rng);

    const EnergyBalance eb = energy_balance(profile, state.weight_kg, stress, life.exercise_minutes, workday,
                                            life.diet_quality, params, rng);
    const double intake = quantize(eb.intake_kcal, 2);
    const double expended = quantize(eb.expended_kcal, 2);
    const double weight = update_weight(state.weight_kg, intake, expended);

    DayResult out;
    out.state = {stress, quality, weight, pressure, sleep};

    DailyRecord& r = out.record;
    r.user_id = profile.user_id;
    r.date = day.date;
    r.is_workday = workday;
    r.work_hours = quantize(work.work_hours, 2);
    r.meetings_count = work.meetings_count;
    r.emails_received = work.emails_received;
    r.pressure_state = pressure;
    r.stress_level = quantize(stress, 2);
    r.sleep_hours = quantize(sleep, 2);
    r.sleep_quality = quantize(quality, 2);
    r.mood = quantize(affect.mood, 2);
    r.energy = quantize(affect.energy, 2);
    r.focus = quantize(affect.focus, 2);
    r.exercise_minutes = life.exercise_minutes;
    r.outdoor_minutes = life.outdoor_minutes;
    r.caffeine_mg = life.caffeine_mg;
    r.diet_quality = quantize(life.diet_quality, 2);
    r.screen_time_hours = quantize(life.screen_time_hours, 2);
    r.calories_intake = intake;
    r.calories_expended = expended;
    r.weight_kg = quantize(weight, 6);
    return out;
}

std::vector<DailyRecord> simulate_user(const UserProfile& profile, std::span<const InterventionEvent> events,
                                       const GeneratorConfig& config) {
    const int days = config.day_count();
    std::vector<DailyRecord> records;
    records.reserve(static_cast<std::size_t>(days));

    DailyState state = initial_state(profile);
    for (int i = 0; i < days; ++i) {
        const SimDate day = make_sim_date(config.start_date, i);
        const DayRng rng(config.seed, profile.user_id, i);
        const ActiveModifiers active = active_modifiers(events, day.date, rng, config.intervention_params);
        auto [next, record] = step_day(state, profile, day, active, config);
        records.push_back(record);
        state = next;
    }
    return records;
}

}  // namespace flow
