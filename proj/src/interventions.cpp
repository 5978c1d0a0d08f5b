#include "flow/interventions.hpp"

#include <algorithm>

namespace flow {

namespace {

constexpr int kMaxAttempts = 10;

constexpr std::array<ChannelTag, kInterventionTypeCount> kScheduleTags = {
    channels::schedule_vacation, channels::schedule_sick_leave, channels::schedule_workload_cap,
    channels::schedule_lifestyle_program};

constexpr std::array<ChannelTag, kInterventionTypeCount> kFireTags = {
    channels::fires_vacation, channels::fires_sick_leave, channels::fires_workload_cap,
    channels::fires_lifestyle_program};

struct Span {
    int first;
    int last;
};

}  // namespace

std::vector<InterventionEvent> schedule_interventions(const UserProfile& profile, const GeneratorConfig& config) {
    const int days = config.day_count();
    const double years = days / 365.25;
    std::vector<InterventionEvent> events;

    for (InterventionType type : kAllInterventionTypes) {
        const auto& p = config.intervention_params[type];
        const RandomChannel ch{config.seed, profile.user_id, kStaticDay, kScheduleTags[index_of(type)]};
        // Draw 0 is the count; each attempt consumes four subsequent draw indices.
        const unsigned count = poisson(ch, 0, p.annual_rate * years);
        std::vector<Span> accepted;
        std::uint64_t k = 1;
        for (unsigned e = 0; e < count; ++e) {
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt, k += 4) {
                const int first = uniform_int(ch, k, 0, days - 1);
                const int duration = uniform_int(ch, k + 1, p.duration_min, p.duration_max);
                const double intensity =
                    p.intensity_min + (p.intensity_max - p.intensity_min) * uniform(ch, k + 2);
                const int last = std::min(first + duration - 1, days - 1);
                const bool overlaps = std::any_of(accepted.begin(), accepted.end(), [&](const Span& s) {
                    return first <= s.last && s.first <= last;
                });
                if (overlaps) {
                    continue;
                }
                accepted.push_back({first, last});
                events.push_back({0, profile.user_id, type, add_days(config.start_date, first),
                                  add_days(config.start_date, last), intensity});
                k += 4;
                break;
            }
        }
    }

    std::stable_sort(events.begin(), events.end(), [](const InterventionEvent& a, const InterventionEvent& b) {
        if (a.start_date != b.start_date) return a.start_date < b.start_date;
        return a.type < b.type;
    });
    return events;
}

ActiveModifiers active_modifiers(std::span<const InterventionEvent> events, Date day, const DayRng& rng,
                                 const InterventionParams& params) {
    ActiveModifiers out;
    for (const auto& e : events) {
        if (!e.covers(day)) {
            continue;
        }
        auto& m = out[e.type];
        m.active = true;
        m.intensity = e.intensity;
        m.fires = rng.bernoulli(kFireTags[index_of(e.type)], params[e.type].effect_probability);
    }
    return out;
}

}  // namespace flow
