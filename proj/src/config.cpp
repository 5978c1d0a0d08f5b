#include "flow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include <fmt/format.h>

#include "flow/randomness.hpp"
#include "json.hpp"

namespace flow {

namespace {

using FieldRef = std::variant<double*, int*, std::uint32_t*, std::uint64_t*, bool*, Date*>;

struct Binding {
    std::string key;
    FieldRef field;
};

// Single source of truth for the dotted key names of every parameter.
std::vector<Binding> bindings(GeneratorConfig& c) {
    auto& s = c.sensitivities;
    auto& n = s.noise;
    std::vector<Binding> out = {
        {"seed", &c.seed},
        {"population_size", &c.population_size},
        {"start_date", &c.start_date},
        {"end_date", &c.end_date},
        {"emit_denormalized", &c.emit_denormalized},
        {"sensitivities.stress_persistence", &s.stress_persistence},
        {"sensitivities.workload_to_stress", &s.workload_to_stress},
        {"sensitivities.stress_to_sleep", &s.stress_to_sleep},
        {"sensitivities.stress_to_mood", &s.stress_to_mood},
        {"sensitivities.sleep_to_mood", &s.sleep_to_mood},
        {"sensitivities.stress_overeat_gain", &s.stress_overeat_gain},
        {"sensitivities.season_amplitude", &s.season_amplitude},
        {"sensitivities.workload_floor", &s.workload_floor},
        {"sensitivities.noise.work_hours", &n.work_hours},
        {"sensitivities.noise.stress", &n.stress},
        {"sensitivities.noise.sleep_hours", &n.sleep_hours},
        {"sensitivities.noise.exercise", &n.exercise},
        {"sensitivities.noise.outdoor", &n.outdoor},
        {"sensitivities.noise.caffeine", &n.caffeine},
        {"sensitivities.noise.diet_quality", &n.diet_quality},
        {"sensitivities.noise.screen_time", &n.screen_time},
        {"sensitivities.noise.mood", &n.mood},
        {"sensitivities.noise.energy", &n.energy},
        {"sensitivities.noise.focus", &n.focus},
        {"sensitivities.noise.intake", &n.intake},
    };
    for (InterventionType t : kAllInterventionTypes) {
        auto& p = c.intervention_params[t];
        const std::string prefix = fmt::format("interventions.{}.", to_string(t));
        out.push_back({prefix + "annual_rate", &p.annual_rate});
        out.push_back({prefix + "duration_min", &p.duration_min});
        out.push_back({prefix + "duration_max", &p.duration_max});
        out.push_back({prefix + "intensity_min", &p.intensity_min});
        out.push_back({prefix + "intensity_max", &p.intensity_max});
        out.push_back({prefix + "effect_probability", &p.effect_probability});
    }
    for (Profession p : kAllProfessions) {
        out.push_back({fmt::format("profession_mix.{}", to_string(p)), &c.profession_mix[index_of(p)]});
    }
    for (WorkMode m : kAllWorkModes) {
        out.push_back({fmt::format("work_mode_mix.{}", to_string(m)), &c.work_mode_mix[index_of(m)]});
    }
    return out;
}

void flatten(const nlohmann::json& node, const std::string& prefix, std::vector<std::pair<std::string, nlohmann::json>>& out) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            flatten(*it, key, out);
        } else {
            out.emplace_back(std::move(key), *it);
        }
    }
}

void assign(const Binding& b, const nlohmann::json& value) {
    auto type_error = [&](std::string_view expected) {
        return ConfigError(b.key, fmt::format("config key '{}' expects {}, got {}", b.key, expected, value.dump()));
    };
    std::visit(
        [&](auto* ptr) {
            using T = std::remove_pointer_t<decltype(ptr)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!value.is_number()) throw type_error("a number");
                *ptr = value.get<double>();
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!value.is_boolean()) throw type_error("true or false");
                *ptr = value.get<bool>();
            } else if constexpr (std::is_same_v<T, Date>) {
                if (!value.is_string()) throw type_error("a YYYY-MM-DD string");
                try {
                    *ptr = parse_date(value.get<std::string>());
                } catch (const std::invalid_argument&) {
                    throw type_error("a YYYY-MM-DD string");
                }
            } else if constexpr (std::is_same_v<T, int>) {
                if (!value.is_number_integer()) throw type_error("an integer");
                const auto v = value.get<std::int64_t>();
                if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
                    throw type_error("an integer in range");
                }
                *ptr = static_cast<int>(v);
            } else {
                if (!value.is_number_integer() || (value.is_number_integer() && !value.is_number_unsigned() &&
                                                   value.get<std::int64_t>() < 0)) {
                    throw type_error("a nonnegative integer");
                }
                const auto v = value.get<std::uint64_t>();
                if (v > std::numeric_limits<T>::max()) throw type_error("an integer in range");
                *ptr = static_cast<T>(v);
            }
        },
        b.field);
}

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

GeneratorConfig default_config() {
    GeneratorConfig c;
    auto& iv = c.intervention_params;
    iv[InterventionType::vacation] = {1.5, 5, 14, 0.1, 0.6, 0.7};
    iv[InterventionType::sick_leave] = {2.0, 1, 5, 0.1, 0.6, 0.7};
    iv[InterventionType::workload_cap] = {0.3, 14, 60, 0.1, 0.6, 0.7};
    iv[InterventionType::lifestyle_program] = {0.4, 30, 90, 0.1, 0.6, 0.7};
    c.profession_mix.fill(1.0);
    c.work_mode_mix = {0.3, 0.4, 0.3};
    return c;
}

std::vector<ConfigViolation> validate_config(const GeneratorConfig& c) {
    std::vector<ConfigViolation> v;
    auto require = [&](bool ok, std::string field, std::string message) {
        if (!ok) v.push_back({std::move(field), std::move(message)});
    };

    require(c.population_size >= 1, "population_size", "must be at least 1");
    require(c.start_date.ok(), "start_date", "not a valid calendar date");
    require(c.end_date.ok(), "end_date", "not a valid calendar date");
    if (c.start_date.ok() && c.end_date.ok()) {
        require(c.start_date <= c.end_date, "start_date",
                fmt::format("start_date {} is after end_date {}", format_date(c.start_date),
                            format_date(c.end_date)));
    }

    const auto& s = c.sensitivities;
    require(std::isfinite(s.stress_persistence) && s.stress_persistence >= 0.0 && s.stress_persistence < 1.0,
            "sensitivities.stress_persistence", "must lie in [0, 1)");
    const std::pair<const char*, double> nonneg[] = {
        {"sensitivities.workload_to_stress", s.workload_to_stress},
        {"sensitivities.stress_to_sleep", s.stress_to_sleep},
        {"sensitivities.stress_to_mood", s.stress_to_mood},
        {"sensitivities.sleep_to_mood", s.sleep_to_mood},
        {"sensitivities.stress_overeat_gain", s.stress_overeat_gain},
        {"sensitivities.season_amplitude", s.season_amplitude},
        {"sensitivities.noise.work_hours", s.noise.work_hours},
        {"sensitivities.noise.stress", s.noise.stress},
        {"sensitivities.noise.sleep_hours", s.noise.sleep_hours},
        {"sensitivities.noise.exercise", s.noise.exercise},
        {"sensitivities.noise.outdoor", s.noise.outdoor},
        {"sensitivities.noise.caffeine", s.noise.caffeine},
        {"sensitivities.noise.diet_quality", s.noise.diet_quality},
        {"sensitivities.noise.screen_time", s.noise.screen_time},
        {"sensitivities.noise.mood", s.noise.mood},
        {"sensitivities.noise.energy", s.noise.energy},
        {"sensitivities.noise.focus", s.noise.focus},
        {"sensitivities.noise.intake", s.noise.intake},
    };
    for (const auto& [field, value] : nonneg) {
        require(finite_nonnegative(value), field, "must be finite and nonnegative");
    }
    require(std::isfinite(s.workload_floor) && s.workload_floor <= 0.0, "sensitivities.workload_floor",
            "must be finite and at most 0");

    for (InterventionType t : kAllInterventionTypes) {
        const auto& p = c.intervention_params[t];
        const std::string prefix = fmt::format("interventions.{}.", to_string(t));
        require(finite_nonnegative(p.annual_rate), prefix + "annual_rate", "must be finite and nonnegative");
        require(p.duration_min >= 1, prefix + "duration_min", "must be at least 1");
        require(p.duration_max >= p.duration_min, prefix + "duration_max", "must be at least duration_min");
        require(std::isfinite(p.intensity_min) && p.intensity_min >= 0.0 && p.intensity_min <= 1.0,
                prefix + "intensity_min", "must lie in [0, 1]");
        require(std::isfinite(p.intensity_max) && p.intensity_max >= p.intensity_min && p.intensity_max <= 1.0,
                prefix + "intensity_max", "must lie in [intensity_min, 1]");
        require(std::isfinite(p.effect_probability) && p.effect_probability >= 0.0 && p.effect_probability <= 1.0,
                prefix + "effect_probability", "must lie in [0, 1]");
    }

    auto check_mix = [&](std::string_view group, std::span<const double> weights, auto names) {
        double total = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (!finite_nonnegative(weights[i])) {
                require(false, fmt::format("{}.{}", group, to_string(names[i])), "must be finite and nonnegative");
                ok = false;
            }
            total += weights[i];
        }
        if (ok) require(total > 0.0, std::string(group), "weights must have a positive sum");
    };
    check_mix("profession_mix", c.profession_mix, kAllProfessions);
    check_mix("work_mode_mix", c.work_mode_mix, kAllWorkModes);
    return v;
}

GeneratorConfig parse_config(std::string_view text) {
    GeneratorConfig config = default_config();
    const auto trimmed = text.find_first_not_of(" \t\r\n");
    if (trimmed == std::string_view::npos) {
        return config;
    }

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", fmt::format("config parse error: {}", e.what()));
    }
    if (!doc.is_object()) {
        throw ConfigError("", "config parse error: top level must be an object");
    }

    std::vector<std::pair<std::string, nlohmann::json>> entries;
    flatten(doc, "", entries);
    const auto table = bindings(config);
    for (const auto& [key, value] : entries) {
        auto it = std::find_if(table.begin(), table.end(), [&](const Binding& b) { return b.key == key; });
        if (it == table.end()) {
            throw ConfigError(key, fmt::format("unknown config key '{}'", key));
        }
        assign(*it, value);
    }

    const auto violations = validate_config(config);
    if (!violations.empty()) {
        const auto& first = violations.front();
        throw ConfigError(first.field, fmt::format("invalid config: {}: {}", first.field, first.message));
    }
    return config;
}

GeneratorConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("", fmt::format("cannot read config file '{}'", path.string()));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const GeneratorConfig& config) {
    GeneratorConfig copy = config;
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& b : bindings(copy)) {
        std::visit(
            [&](auto* ptr) {
                using T = std::remove_pointer_t<decltype(ptr)>;
                if constexpr (std::is_same_v<T, Date>) {
                    doc[b.key] = format_date(*ptr);
                } else {
                    doc[b.key] = *ptr;
                }
            },
            b.field);
    }
    return doc.dump(2) + "\n";
}

std::string config_digest(const GeneratorConfig& config) {
    return fmt::format("{:016x}", fnv1a64(serialize_config(config)));
}

void apply_seed_environment(GeneratorConfig& config) {
    const char* raw = std::getenv("FLOW_SEED");
    if (raw == nullptr || *raw == '\0') {
        return;
    }
    const std::string_view text(raw);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("seed", fmt::format("FLOW_SEED='{}' is not an unsigned integer", text));
    }
    config.seed = seed;
}

}  // namespace flow
