#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flow/aggregate.hpp"
#include "flow/config.hpp"
#include "flow/csv.hpp"
#include "flow/dynamics.hpp"
#include "flow/interventions.hpp"
#include "flow/population.hpp"

namespace flow {

inline constexpr std::string_view kToolVersion = "1.0.0";

inline constexpr std::string_view kUsersFile = "users.csv";
inline constexpr std::string_view kDailyLogsFile = "daily_logs.csv";
inline constexpr std::string_view kWeeklyFile = "weekly_summaries.csv";
inline constexpr std::string_view kInterventionsFile = "interventions.csv";
inline constexpr std::string_view kDailyAllFile = "daily_all.csv";
inline constexpr std::string_view kManifestFile = "manifest.json";

enum class ColumnKind { integer, fixed, date, enumeration, boolean };

struct Column {
    std::string name;
    ColumnKind kind;
    int precision = 0;  // decimals, fixed columns only
};

struct TableSchema {
    std::string name;
    std::vector<Column> columns;

    std::string header() const;
};

const TableSchema& users_schema();
const TableSchema& daily_logs_schema();
const TableSchema& weekly_schema();
const TableSchema& interventions_schema();
/// users + daily_logs (minus user_id) + weekly (minus user_id, prefixed week_)
/// + one *_active flag per intervention type.
const TableSchema& daily_all_schema();

/// Name of a weekly column inside daily_all.
std::string weekly_column_in_daily_all(std::string_view weekly_column);

// Row formatters; output matches the schema column order exactly.
std::string format_user_row(const UserProfile& p);
std::string format_daily_row(const DailyRecord& r);
std::string format_weekly_row(const WeeklySummary& w);
std::string format_intervention_row(const InterventionEvent& e);
std::string format_activity_flags(const std::array<bool, kInterventionTypeCount>& active);

/// Joins already formatted source rows into one daily_all row. Drops the
/// leading user_id of the daily and weekly rows.
std::string join_daily_all_row(std::string_view user_row, std::string_view daily_row, std::string_view weekly_row,
                               std::string_view flags);

std::array<bool, kInterventionTypeCount> activity_flags(std::span<const InterventionEvent> events, Date day);

struct RowCounts {
    std::uint64_t users = 0;
    std::uint64_t daily_logs = 0;
    std::uint64_t weekly_summaries = 0;
    std::uint64_t interventions = 0;
    std::optional<std::uint64_t> daily_all;

    bool operator==(const RowCounts&) const = default;
};

/// Everything generated for one user.
struct UserData {
    UserProfile profile;
    std::vector<InterventionEvent> events;
    std::vector<DailyRecord> records;
    std::vector<WeeklySummary> weeks;
};

/// Streams users in ascending user_id order into all release tables at once.
/// Assigns dense intervention ids in write order.
class DatasetWriter {
public:
    DatasetWriter(const std::filesystem::path& dir, bool emit_denormalized);

    void write(UserData& user);
    RowCounts finish();

private:
    CsvWriter users_;
    CsvWriter daily_;
    CsvWriter weekly_;
    CsvWriter interventions_;
    std::optional<CsvWriter> daily_all_;
    RowCounts counts_;
    std::uint32_t last_user_ = 0;
    std::uint64_t next_intervention_id_ = 1;
};

// Whole-table writers. Inputs must be sorted as described; violations throw.
void write_users(const std::filesystem::path& path, std::span<const UserProfile> profiles);
/// Sorted by (user_id, date); a duplicate pair throws naming it.
void write_daily_logs(const std::filesystem::path& path, std::span<const DailyRecord> records);
void write_weekly(const std::filesystem::path& path, std::span<const WeeklySummary> summaries);
void write_interventions(const std::filesystem::path& path, std::span<const InterventionEvent> events);
/// Throws if a daily row has no weekly row for its week.
void write_daily_all(const std::filesystem::path& path, std::span<const UserProfile> profiles,
                     std::span<const DailyRecord> records, std::span<const WeeklySummary> summaries,
                     std::span<const InterventionEvent> events, Date start_date);

void write_manifest(const std::filesystem::path& dir, const GeneratorConfig& config, const RowCounts& counts);

}  // namespace flow
