#include "flow/population.hpp"

#include <algorithm>
#include <array>

#include "flow/randomness.hpp"

namespace flow {

namespace {

constexpr std::array<ProfessionSpec, kProfessionCount> kProfessions = {{
    {Profession::manager, "manager", 8.5, 5.0, 60.0, SchedulePattern::standard_weekday, 0.0},
    {Profession::engineer, "engineer", 8.0, 2.0, 30.0, SchedulePattern::standard_weekday, 0.0},
    {Profession::nurse, "nurse", 9.0, 1.0, 8.0, SchedulePattern::rotating_shift, 0.4},
    {Profession::teacher, "teacher", 7.5, 1.5, 20.0, SchedulePattern::standard_weekday, 0.0},
    {Profession::analyst, "analyst", 8.0, 3.0, 40.0, SchedulePattern::standard_weekday, 0.0},
}};

constexpr std::array<double, 3> kChronotypeWeights = {0.25, 0.5, 0.25};

// Demographic priors. Not representative of any real population.
constexpr double kAgeMin = 22, kAgeMax = 65;
constexpr double kHeightMin = 145.0, kHeightMax = 205.0;
constexpr double kFemaleHeightMean = 165.0, kFemaleHeightSd = 6.0;
constexpr double kMaleHeightMean = 178.0, kMaleHeightSd = 7.0;
constexpr double kBmiMean = 25.0, kBmiSd = 3.5, kBmiMin = 17.0, kBmiMax = 40.0;
constexpr double kTendencyMean = 0.5, kTendencySd = 0.18;
constexpr double kBaseStressMean = 4.5, kBaseStressSd = 1.2;
constexpr double kBaseSleepMean = 7.4, kBaseSleepSd = 0.5, kBaseSleepMin = 5.5, kBaseSleepMax = 9.0;

}  // namespace

std::span<const ProfessionSpec> profession_table() { return kProfessions; }

const ProfessionSpec& profession_spec(Profession profession) { return kProfessions[index_of(profession)]; }

UserProfile sample_profile(std::uint64_t seed, std::uint32_t user_id, const GeneratorConfig& config) {
    const DayRng rng(seed, user_id, kStaticDay);
    auto clamped_normal = [&](ChannelTag tag, double mean, double sd, double lo, double hi) {
        return std::clamp(rng.normal(tag, mean, sd), lo, hi);
    };

    UserProfile p;
    p.user_id = user_id;
    p.age = uniform_int(rng.channel(channels::profile_age), 0, static_cast<int>(kAgeMin), static_cast<int>(kAgeMax));
    p.sex = rng.bernoulli(channels::profile_sex, 0.5) ? Sex::male : Sex::female;
    p.height_cm = p.sex == Sex::male
                      ? clamped_normal(channels::profile_height, kMaleHeightMean, kMaleHeightSd, kHeightMin, kHeightMax)
                      : clamped_normal(channels::profile_height, kFemaleHeightMean, kFemaleHeightSd, kHeightMin,
                                       kHeightMax);
    p.profession = kAllProfessions[categorical(rng.channel(channels::profile_profession), 0, config.profession_mix)];
    p.work_mode = kAllWorkModes[categorical(rng.channel(channels::profile_work_mode), 0, config.work_mode_mix)];
    p.chronotype = kAllChronotypes[categorical(rng.channel(channels::profile_chronotype), 0, kChronotypeWeights)];
    p.baseline_bmi = clamped_normal(channels::profile_bmi, kBmiMean, kBmiSd, kBmiMin, kBmiMax);
    const double height_m = p.height_cm / 100.0;
    p.baseline_weight_kg = p.baseline_bmi * height_m * height_m;
    p.activity_tendency = clamped_normal(channels::profile_activity, kTendencyMean, kTendencySd, 0.0, 1.0);
    p.diet_tendency = clamped_normal(channels::profile_diet, kTendencyMean, kTendencySd, 0.0, 1.0);
    p.caffeine_tendency = clamped_normal(channels::profile_caffeine, kTendencyMean, kTendencySd, 0.0, 1.0);
    p.base_stress = clamped_normal(channels::profile_base_stress, kBaseStressMean, kBaseStressSd, 0.0, 10.0);
    p.base_sleep_hours =
        clamped_normal(channels::profile_base_sleep, kBaseSleepMean, kBaseSleepSd, kBaseSleepMin, kBaseSleepMax);
    return p;
}

std::vector<UserProfile> sample_population(const GeneratorConfig& config) {
    std::vector<UserProfile> out;
    out.reserve(config.population_size);
    for (std::uint32_t id = 1; id <= config.population_size; ++id) {
        out.push_back(sample_profile(config.seed, id, config));
    }
    return out;
}

}  // namespace flow
