#include "flow/export.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>
#include <map>

#include <fmt/format.h>

#include "json.hpp"

namespace flow {

namespace {

using K = ColumnKind;

TableSchema make_users_schema() {
    return {"users",
            {{"user_id", K::integer},
             {"age", K::integer},
             {"sex", K::enumeration},
             {"height_cm", K::fixed, 1},
             {"profession", K::enumeration},
             {"work_mode", K::enumeration},
             {"chronotype", K::enumeration},
             {"baseline_bmi", K::fixed, 2},
             {"baseline_weight_kg", K::fixed, 6},
             {"activity_tendency", K::fixed, 3},
             {"diet_tendency", K::fixed, 3},
             {"caffeine_tendency", K::fixed, 3},
             {"base_stress", K::fixed, 2},
             {"base_sleep_hours", K::fixed, 2}}};
}

TableSchema make_daily_schema() {
    return {"daily_logs",
            {{"user_id", K::integer},
             {"date", K::date},
             {"is_workday", K::boolean},
             {"work_hours", K::fixed, 2},
             {"meetings_count", K::integer},
             {"emails_received", K::integer},
             {"pressure_state", K::enumeration},
             {"stress_level", K::fixed, 2},
             {"sleep_hours", K::fixed, 2},
             {"sleep_quality", K::fixed, 2},
             {"mood", K::fixed, 2},
             {"energy", K::fixed, 2},
             {"focus", K::fixed, 2},
             {"exercise_minutes", K::integer},
             {"outdoor_minutes", K::integer},
             {"caffeine_mg", K::integer},
             {"diet_quality", K::fixed, 2},
             {"screen_time_hours", K::fixed, 2},
             {"calories_intake", K::fixed, 2},
             {"calories_expended", K::fixed, 2},
             {"weight_kg", K::fixed, 6}}};
}

TableSchema make_weekly_schema() {
    return {"weekly_summaries",
            {{"user_id", K::integer},
             {"week_index", K::integer},
             {"week_start_date", K::date},
             {"days_covered", K::integer},
             {"avg_stress", K::fixed, 2},
             {"avg_sleep_hours", K::fixed, 2},
             {"sleep_debt_hours", K::fixed, 2},
             {"job_satisfaction", K::fixed, 2},
             {"anxiety_score", K::fixed, 2},
             {"depression_score", K::fixed, 2},
             {"avg_weight_kg", K::fixed, 3},
             {"low_diet_days", K::integer}}};
}

TableSchema make_interventions_schema() {
    return {"interventions",
            {{"intervention_id", K::integer},
             {"user_id", K::integer},
             {"type", K::enumeration},
             {"start_date", K::date},
             {"end_date", K::date},
             {"intensity", K::fixed, 3}}};
}

TableSchema make_daily_all_schema() {
    TableSchema s{"daily_all", users_schema().columns};
    const auto& daily = daily_logs_schema().columns;
    s.columns.insert(s.columns.end(), daily.begin() + 1, daily.end());
    const auto& weekly = weekly_schema().columns;
    for (auto it = weekly.begin() + 1; it != weekly.end(); ++it) {
        Column c = *it;
        c.name = weekly_column_in_daily_all(c.name);
        s.columns.push_back(c);
    }
    for (InterventionType t : kAllInterventionTypes) {
        s.columns.push_back({fmt::format("{}_active", to_string(t)), K::boolean});
    }
    return s;
}

/// Appends fields in schema order, taking each fixed column's precision from
/// the schema so formatting and declared precision cannot drift apart.
class RowBuilder {
public:
    explicit RowBuilder(const TableSchema& schema) : schema_(schema) { out_.reserve(256); }

    RowBuilder& add(std::integral auto v) {
        sep(K::integer);
        fmt::format_to(std::back_inserter(out_), "{}", v);
        return *this;
    }
    RowBuilder& add(bool v) {
        sep(K::boolean);
        out_ += v ? "true" : "false";
        return *this;
    }
    RowBuilder& add(double v) {
        const int precision = sep(K::fixed);
        fmt::format_to(std::back_inserter(out_), "{:.{}f}", v + 0.0, precision);
        return *this;
    }
    RowBuilder& add(Date d) {
        sep(K::date);
        out_ += format_date(d);
        return *this;
    }
    RowBuilder& add(std::string_view v) {
        sep(K::enumeration);
        out_ += v;
        return *this;
    }

    std::string finish() {
        assert(index_ == schema_.columns.size());
        return std::move(out_);
    }

private:
    int sep(ColumnKind kind) {
        assert(index_ < schema_.columns.size() && schema_.columns[index_].kind == kind);
        (void)kind;
        if (index_ > 0) out_ += ',';
        return schema_.columns[index_++].precision;
    }

    const TableSchema& schema_;
    std::string out_;
    std::size_t index_ = 0;
};

std::string_view drop_first_field(std::string_view row) {
    const auto comma = row.find(',');
    return comma == std::string_view::npos ? std::string_view{} : row.substr(comma + 1);
}

bool daily_key_less(const DailyRecord& a, const DailyRecord& b) {
    return a.user_id != b.user_id ? a.user_id < b.user_id : a.date < b.date;
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    }
}

}  // namespace

std::string TableSchema::header() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) out += ',';
        out += columns[i].name;
    }
    return out;
}

const TableSchema& users_schema() {
    static const TableSchema s = make_users_schema();
    return s;
}
const TableSchema& daily_logs_schema() {
    static const TableSchema s = make_daily_schema();
    return s;
}
const TableSchema& weekly_schema() {
    static const TableSchema s = make_weekly_schema();
    return s;
}
const TableSchema& interventions_schema() {
    static const TableSchema s = make_interventions_schema();
    return s;
}
const TableSchema& daily_all_schema() {
    static const TableSchema s = make_daily_all_schema();
    return s;
}

std::string weekly_column_in_daily_all(std::string_view weekly_column) {
    if (weekly_column.starts_with("week_")) {
        return std::string(weekly_column);
    }
    return fmt::format("week_{}", weekly_column);
}

std::string format_user_row(const UserProfile& p) {
    return RowBuilder(users_schema())
        .add(p.user_id)
        .add(p.age)
        .add(to_string(p.sex))
        .add(p.height_cm)
        .add(to_string(p.profession))
        .add(to_string(p.work_mode))
        .add(to_string(p.chronotype))
        .add(p.baseline_bmi)
        .add(p.baseline_weight_kg)
        .add(p.activity_tendency)
        .add(p.diet_tendency)
        .add(p.caffeine_tendency)
        .add(p.base_stress)
        .add(p.base_sleep_hours)
        .finish();
}

std::string format_daily_row(const DailyRecord& r) {
    return RowBuilder(daily_logs_schema())
        .add(r.user_id)
        .add(r.date)
        .add(r.is_workday)
        .add(r.work_hours)
        .add(r.meetings_count)
        .add(r.emails_received)
        .add(to_string(r.pressure_state))
        .add(r.stress_level)
        .add(r.sleep_hours)
        .add(r.sleep_quality)
        .add(r.mood)
        .add(r.energy)
        .add(r.focus)
        .add(r.exercise_minutes)
        .add(r.outdoor_minutes)
        .add(r.caffeine_mg)
        .add(r.diet_quality)
        .add(r.screen_time_hours)
        .add(r.calories_intake)
        .add(r.calories_expended)
        .add(r.weight_kg)
        .finish();
}

std::string format_weekly_row(const WeeklySummary& w) {
    return RowBuilder(weekly_schema())
        .add(w.user_id)
        .add(w.week_index)
        .add(w.week_start_date)
        .add(w.days_covered)
        .add(w.avg_stress)
        .add(w.avg_sleep_hours)
        .add(w.sleep_debt_hours)
        .add(w.job_satisfaction)
        .add(w.anxiety_score)
        .add(w.depression_score)
        .add(w.avg_weight_kg)
        .add(w.low_diet_days)
        .finish();
}

std::string format_intervention_row(const InterventionEvent& e) {
    return RowBuilder(interventions_schema())
        .add(e.intervention_id)
        .add(e.user_id)
        .add(to_string(e.type))
        .add(e.start_date)
        .add(e.end_date)
        .add(e.intensity)
        .finish();
}

std::string format_activity_flags(const std::array<bool, kInterventionTypeCount>& active) {
    std::string out;
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (i > 0) out += ',';
        out += active[i] ? "true" : "false";
    }
    return out;
}

std::string join_daily_all_row(std::string_view user_row, std::string_view daily_row, std::string_view weekly_row,
                               std::string_view flags) {
    std::string out;
    out.reserve(user_row.size() + daily_row.size() + weekly_row.size() + flags.size() + 3);
    out += user_row;
    out += ',';
    out += drop_first_field(daily_row);
    out += ',';
    out += drop_first_field(weekly_row);
    out += ',';
    out += flags;
    return out;
}

std::array<bool, kInterventionTypeCount> activity_flags(std::span<const InterventionEvent> events, Date day) {
    std::array<bool, kInterventionTypeCount> out{};
    for (const auto& e : events) {
        if (e.covers(day)) out[index_of(e.type)] = true;
    }
    return out;
}

// --- streaming writer ------------------------------------------------------

DatasetWriter::DatasetWriter(const std::filesystem::path& dir, bool emit_denormalized)
    : users_((ensure_dir(dir), dir / kUsersFile)),
      daily_(dir / kDailyLogsFile),
      weekly_(dir / kWeeklyFile),
      interventions_(dir / kInterventionsFile) {
    users_.write_line(users_schema().header());
    daily_.write_line(daily_logs_schema().header());
    weekly_.write_line(weekly_schema().header());
    interventions_.write_line(interventions_schema().header());
    if (emit_denormalized) {
        daily_all_.emplace(dir / kDailyAllFile);
        daily_all_->write_line(daily_all_schema().header());
        counts_.daily_all = 0;
    } else {
        // A stale daily_all.csv from an earlier run would misdescribe this dataset.
        std::error_code ec;
        std::filesystem::remove(dir / kDailyAllFile, ec);
    }
}

void DatasetWriter::write(UserData& user) {
    if (user.profile.user_id <= last_user_) {
        throw std::logic_error(fmt::format("users must be written in ascending order ({} after {})",
                                           user.profile.user_id, last_user_));
    }
    last_user_ = user.profile.user_id;

    const std::string user_row = format_user_row(user.profile);
    users_.write_line(user_row);
    ++counts_.users;

    for (auto& e : user.events) {
        e.intervention_id = next_intervention_id_++;
        interventions_.write_line(format_intervention_row(e));
        ++counts_.interventions;
    }

    std::vector<std::string> weekly_rows;
    weekly_rows.reserve(user.weeks.size());
    for (const auto& w : user.weeks) {
        weekly_rows.push_back(format_weekly_row(w));
        weekly_.write_line(weekly_rows.back());
        ++counts_.weekly_summaries;
    }

    for (std::size_t i = 0; i < user.records.size(); ++i) {
        const auto& r = user.records[i];
        if (i > 0 && !daily_key_less(user.records[i - 1], r)) {
            throw std::logic_error(fmt::format("duplicate or unordered daily record (user {}, {})", r.user_id,
                                               format_date(r.date)));
        }
        const std::string daily_row = format_daily_row(r);
        daily_.write_line(daily_row);
        ++counts_.daily_logs;
        if (daily_all_) {
            const std::size_t week = i / 7;
            if (week >= weekly_rows.size()) {
                throw std::logic_error(
                    fmt::format("no weekly summary for user {} week {}", r.user_id, week));
            }
            daily_all_->write_line(join_daily_all_row(user_row, daily_row, weekly_rows[week],
                                                      format_activity_flags(activity_flags(user.events, r.date))));
            ++*counts_.daily_all;
        }
    }
}

RowCounts DatasetWriter::finish() {
    users_.close();
    daily_.close();
    weekly_.close();
    interventions_.close();
    if (daily_all_) daily_all_->close();
    return counts_;
}

// --- whole-table writers ---------------------------------------------------

void write_users(const std::filesystem::path& path, std::span<const UserProfile> profiles) {
    CsvWriter out(path);
    out.write_line(users_schema().header());
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        if (i > 0 && profiles[i - 1].user_id >= profiles[i].user_id) {
            throw std::invalid_argument(fmt::format("users not ascending at user {}", profiles[i].user_id));
        }
        out.write_line(format_user_row(profiles[i]));
    }
    out.close();
}

void write_daily_logs(const std::filesystem::path& path, std::span<const DailyRecord> records) {
    CsvWriter out(path);
    out.write_line(daily_logs_schema().header());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0 && !daily_key_less(records[i - 1], records[i])) {
            throw std::invalid_argument(fmt::format("duplicate or unordered daily record (user {}, {})",
                                                    records[i].user_id, format_date(records[i].date)));
        }
        out.write_line(format_daily_row(records[i]));
    }
    out.close();
}

void write_weekly(const std::filesystem::path& path, std::span<const WeeklySummary> summaries) {
    CsvWriter out(path);
    out.write_line(weekly_schema().header());
    for (const auto& w : summaries) {
        out.write_line(format_weekly_row(w));
    }
    out.close();
}

void write_interventions(const std::filesystem::path& path, std::span<const InterventionEvent> events) {
    CsvWriter out(path);
    out.write_line(interventions_schema().header());
    for (const auto& e : events) {
        out.write_line(format_intervention_row(e));
    }
    out.close();
}

void write_daily_all(const std::filesystem::path& path, std::span<const UserProfile> profiles,
                     std::span<const DailyRecord> records, std::span<const WeeklySummary> summaries,
                     std::span<const InterventionEvent> events, Date start_date) {
    std::map<std::uint32_t, std::string> user_rows;
    for (const auto& p : profiles) user_rows.emplace(p.user_id, format_user_row(p));
    std::map<std::pair<std::uint32_t, int>, std::string> weekly_rows;
    for (const auto& w : summaries) weekly_rows.emplace(std::pair{w.user_id, w.week_index}, format_weekly_row(w));

    std::map<std::uint32_t, std::vector<InterventionEvent>> user_events;
    for (const auto& e : events) user_events[e.user_id].push_back(e);

    CsvWriter out(path);
    out.write_line(daily_all_schema().header());
    for (const auto& r : records) {
        const auto user = user_rows.find(r.user_id);
        if (user == user_rows.end()) {
            throw std::invalid_argument(fmt::format("daily record for unknown user {}", r.user_id));
        }
        const int week = days_between(start_date, r.date) / 7;
        const auto weekly = weekly_rows.find({r.user_id, week});
        if (weekly == weekly_rows.end()) {
            throw std::invalid_argument(fmt::format("missing weekly summary for user {} week {}", r.user_id, week));
        }
        const auto& own = user_events[r.user_id];
        out.write_line(join_daily_all_row(user->second, format_daily_row(r), weekly->second,
                                          format_activity_flags(activity_flags(own, r.date))));
    }
    out.close();
}

void write_manifest(const std::filesystem::path& dir, const GeneratorConfig& config, const RowCounts& counts) {
    nlohmann::ordered_json doc;
    doc["tool"] = "flow";
    doc["tool_version"] = kToolVersion;
    doc["seed"] = config.seed;
    doc["config_digest"] = config_digest(config);
    doc["start_date"] = format_date(config.start_date);
    doc["end_date"] = format_date(config.end_date);
    doc["population_size"] = config.population_size;
    nlohmann::ordered_json rows;
    rows[std::string(kUsersFile)] = counts.users;
    rows[std::string(kDailyLogsFile)] = counts.daily_logs;
    rows[std::string(kWeeklyFile)] = counts.weekly_summaries;
    rows[std::string(kInterventionsFile)] = counts.interventions;
    if (counts.daily_all) rows[std::string(kDailyAllFile)] = *counts.daily_all;
    doc["row_counts"] = rows;

    CsvWriter out(dir / kManifestFile);
    out.write_line(doc.dump(2));
    out.close();
}

}  // namespace flow
