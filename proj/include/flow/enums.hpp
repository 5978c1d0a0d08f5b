#pragma once

// Categorical domain values and their CSV spellings.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace flow {

enum class Sex { female, male };
enum class Profession { manager, engineer, nurse, teacher, analyst };
enum class WorkMode { remote, onsite, hybrid };
enum class Chronotype { early, intermediate, late };
enum class SchedulePattern { standard_weekday, rotating_shift };
enum class PressureState { normal, elevated, critical };
enum class InterventionType { vacation, sick_leave, workload_cap, lifestyle_program };

inline constexpr std::size_t kProfessionCount = 5;
inline constexpr std::size_t kWorkModeCount = 3;
inline constexpr std::size_t kInterventionTypeCount = 4;

inline constexpr std::array<Profession, kProfessionCount> kAllProfessions = {
    Profession::manager, Profession::engineer, Profession::nurse, Profession::teacher,
    Profession::analyst};
inline constexpr std::array<WorkMode, kWorkModeCount> kAllWorkModes = {
    WorkMode::remote, WorkMode::onsite, WorkMode::hybrid};
inline constexpr std::array<InterventionType, kInterventionTypeCount> kAllInterventionTypes = {
    InterventionType::vacation, InterventionType::sick_leave, InterventionType::workload_cap,
    InterventionType::lifestyle_program};

constexpr std::size_t index_of(auto e) { return static_cast<std::size_t>(e); }

constexpr std::string_view to_string(Sex v) {
    constexpr std::array<std::string_view, 2> names = {"female", "male"};
    return names[index_of(v)];
}
constexpr std::string_view to_string(Profession v) {
    constexpr std::array<std::string_view, kProfessionCount> names = {"manager", "engineer", "nurse",
                                                                      "teacher", "analyst"};
    return names[index_of(v)];
}
constexpr std::string_view to_string(WorkMode v) {
    constexpr std::array<std::string_view, kWorkModeCount> names = {"remote", "onsite", "hybrid"};
    return names[index_of(v)];
}
constexpr std::string_view to_string(Chronotype v) {
    constexpr std::array<std::string_view, 3> names = {"early", "intermediate", "late"};
    return names[index_of(v)];
}
constexpr std::string_view to_string(SchedulePattern v) {
    constexpr std::array<std::string_view, 2> names = {"standard_weekday", "rotating_shift"};
    return names[index_of(v)];
}
constexpr std::string_view to_string(PressureState v) {
    constexpr std::array<std::string_view, 3> names = {"normal", "elevated", "critical"};
    return names[index_of(v)];
}
constexpr std::string_view to_string(InterventionType v) {
    constexpr std::array<std::string_view, kInterventionTypeCount> names = {
        "vacation", "sick_leave", "workload_cap", "lifestyle_program"};
    return names[index_of(v)];
}

/// Reverse lookup by CSV spelling; nullopt for unknown names.
template <typename Enum, std::size_t N>
constexpr std::optional<Enum> parse_enum(std::string_view text, const std::array<Enum, N>& values) {
    for (Enum v : values) {
        if (to_string(v) == text) {
            return v;
        }
    }
    return std::nullopt;
}

inline constexpr std::array<Sex, 2> kAllSexes = {Sex::female, Sex::male};
inline constexpr std::array<Chronotype, 3> kAllChronotypes = {Chronotype::early, Chronotype::intermediate,
                                                              Chronotype::late};
inline constexpr std::array<PressureState, 3> kAllPressureStates = {
    PressureState::normal, PressureState::elevated, PressureState::critical};

}  // namespace flow
