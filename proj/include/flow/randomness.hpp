#pragma once

// Counter-based random draws. Every value is a pure function of
// (seed, user_id, day_index, channel tag, draw index), so output does not
// depend on iteration order, population size, or thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace flow {

/// FNV-1a, 64 bit.
constexpr std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct ChannelTag {
    std::string_view name;
    std::uint64_t hash;

    constexpr explicit ChannelTag(std::string_view n) : name(n), hash(fnv1a64(n)) {}
};

/// Day index used for profile sampling and intervention scheduling draws.
inline constexpr std::int64_t kStaticDay = -1;

struct RandomChannel {
    std::uint64_t seed = 0;
    std::uint64_t user_id = 0;
    std::int64_t day_index = kStaticDay;
    ChannelTag tag{""};
};

/// Raw 64-bit draw number `k` of a channel.
std::uint64_t draw_bits(const RandomChannel& channel, std::uint64_t k);

/// Uniform on [0, 1) with 53 bits of resolution.
double uniform(const RandomChannel& channel, std::uint64_t k);

/// Box-Muller on draws 2k and 2k+1 (cosine branch only). sd == 0 returns mean exactly.
double normal(const RandomChannel& channel, std::uint64_t k, double mean, double sd);

bool bernoulli(const RandomChannel& channel, std::uint64_t k, double p);

/// Index i with probability weights[i] / sum. Throws std::invalid_argument for
/// empty, negative, or all-zero weights.
std::size_t categorical(const RandomChannel& channel, std::uint64_t k, std::span<const double> weights);

/// Uniform integer on [lo, hi].
int uniform_int(const RandomChannel& channel, std::uint64_t k, int lo, int hi);

/// Poisson by CDF inversion of a single uniform draw; normal approximation above
/// lambda = 500.
unsigned poisson(const RandomChannel& channel, std::uint64_t k, double lambda);

/// Binds (seed, user, day) so call sites only name the channel tag.
class DayRng {
public:
    DayRng(std::uint64_t seed, std::uint64_t user_id, std::int64_t day_index)
        : seed_(seed), user_id_(user_id), day_index_(day_index) {}

    RandomChannel channel(ChannelTag tag) const { return {seed_, user_id_, day_index_, tag}; }

    double uniform(ChannelTag tag, std::uint64_t k = 0) const { return flow::uniform(channel(tag), k); }
    double normal(ChannelTag tag, double mean, double sd, std::uint64_t k = 0) const {
        return flow::normal(channel(tag), k, mean, sd);
    }
    bool bernoulli(ChannelTag tag, double p, std::uint64_t k = 0) const {
        return flow::bernoulli(channel(tag), k, p);
    }
    unsigned poisson(ChannelTag tag, double lambda, std::uint64_t k = 0) const {
        return flow::poisson(channel(tag), k, lambda);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t user_id() const { return user_id_; }
    std::int64_t day_index() const { return day_index_; }

private:
    std::uint64_t seed_;
    std::uint64_t user_id_;
    std::int64_t day_index_;
};

/// Registry of every channel tag used by the generator. Adding a draw means
/// adding a tag here; tags must be unique.
namespace channels {

inline constexpr ChannelTag profile_age{"profile.age"};
inline constexpr ChannelTag profile_sex{"profile.sex"};
inline constexpr ChannelTag profile_height{"profile.height"};
inline constexpr ChannelTag profile_profession{"profile.profession"};
inline constexpr ChannelTag profile_work_mode{"profile.work_mode"};
inline constexpr ChannelTag profile_chronotype{"profile.chronotype"};
inline constexpr ChannelTag profile_bmi{"profile.bmi"};
inline constexpr ChannelTag profile_activity{"profile.activity_tendency"};
inline constexpr ChannelTag profile_diet{"profile.diet_tendency"};
inline constexpr ChannelTag profile_caffeine{"profile.caffeine_tendency"};
inline constexpr ChannelTag profile_base_stress{"profile.base_stress"};
inline constexpr ChannelTag profile_base_sleep{"profile.base_sleep_hours"};
inline constexpr ChannelTag cycle_phase{"calendar.cycle_phase"};

inline constexpr ChannelTag weekend_shift{"calendar.weekend_shift"};
inline constexpr ChannelTag pressure_transition{"pressure_transition"};
inline constexpr ChannelTag work_hours_noise{"work_hours_noise"};
inline constexpr ChannelTag meetings_count{"meetings_count"};
inline constexpr ChannelTag emails_received{"emails_received"};
inline constexpr ChannelTag stress_noise{"stress_noise"};
inline constexpr ChannelTag sleep_noise{"sleep_noise"};
inline constexpr ChannelTag exercise_noise{"exercise_noise"};
inline constexpr ChannelTag outdoor_noise{"outdoor_noise"};
inline constexpr ChannelTag caffeine_noise{"caffeine_noise"};
inline constexpr ChannelTag diet_noise{"diet_noise"};
inline constexpr ChannelTag screen_noise{"screen_noise"};
inline constexpr ChannelTag mood_noise{"mood_noise"};
inline constexpr ChannelTag energy_noise{"energy_noise"};
inline constexpr ChannelTag focus_noise{"focus_noise"};
inline constexpr ChannelTag intake_noise{"intake_noise"};

inline constexpr ChannelTag schedule_vacation{"schedule.vacation"};
inline constexpr ChannelTag schedule_sick_leave{"schedule.sick_leave"};
inline constexpr ChannelTag schedule_workload_cap{"schedule.workload_cap"};
inline constexpr ChannelTag schedule_lifestyle_program{"schedule.lifestyle_program"};
inline constexpr ChannelTag fires_vacation{"fires.vacation"};
inline constexpr ChannelTag fires_sick_leave{"fires.sick_leave"};
inline constexpr ChannelTag fires_workload_cap{"fires.workload_cap"};
inline constexpr ChannelTag fires_lifestyle_program{"fires.lifestyle_program"};

inline constexpr ChannelTag all[] = {
    profile_age, profile_sex, profile_height, profile_profession, profile_work_mode,
    profile_chronotype, profile_bmi, profile_activity, profile_diet, profile_caffeine,
    profile_base_stress, profile_base_sleep, cycle_phase, weekend_shift, pressure_transition,
    work_hours_noise, meetings_count, emails_received, stress_noise, sleep_noise,
    exercise_noise, outdoor_noise, caffeine_noise, diet_noise, screen_noise, mood_noise,
    energy_noise, focus_noise, intake_noise, schedule_vacation, schedule_sick_leave,
    schedule_workload_cap, schedule_lifestyle_program, fires_vacation, fires_sick_leave,
    fires_workload_cap, fires_lifestyle_program,
};

}  // namespace channels

}  // namespace flow
