#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "flow/config.hpp"
#include "flow/date.hpp"
#include "flow/population.hpp"
#include "flow/randomness.hpp"

namespace flow {

struct InterventionEvent {
    /// Dense global id; 0 until assigned at export time.
    std::uint64_t intervention_id = 0;
    std::uint32_t user_id = 0;
    InterventionType type = InterventionType::vacation;
    Date start_date;
    Date end_date;  // inclusive
    double intensity = 0.0;

    bool covers(Date d) const { return start_date <= d && d <= end_date; }
    bool operator==(const InterventionEvent&) const = default;
};

/// Draws this user's events for the configured range, sorted by (start_date, type).
/// Same-type events never overlap; proposals that collide are redrawn up to ten
/// times and then dropped.
std::vector<InterventionEvent> schedule_interventions(const UserProfile& profile, const GeneratorConfig& config);

struct Modifier {
    bool active = false;
    double intensity = 0.0;
    bool fires = false;

    bool fired() const { return active && fires; }

    /// Intensity on days the effect fires, zero otherwise.
    double effect() const { return active && fires ? intensity : 0.0; }
};

struct ActiveModifiers {
    std::array<Modifier, kInterventionTypeCount> by_type{};

    const Modifier& operator[](InterventionType t) const { return by_type[index_of(t)]; }
    Modifier& operator[](InterventionType t) { return by_type[index_of(t)]; }

    /// Vacation and sick leave make the day a non-workday regardless of firing.
    bool forces_absence() const {
        return (*this)[InterventionType::vacation].active || (*this)[InterventionType::sick_leave].active;
    }
    bool any_active() const {
        for (const auto& m : by_type) {
            if (m.active) return true;
        }
        return false;
    }
};

/// Modifiers in effect on `day`. Each active type fires with its
/// effect_probability, keyed per (user, day, type).
ActiveModifiers active_modifiers(std::span<const InterventionEvent> events, Date day, const DayRng& rng,
                                 const InterventionParams& params);

}  // namespace flow
