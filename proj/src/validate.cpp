#include "flow/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "flow/aggregate.hpp"
#include "flow/csv.hpp"
#include "flow/dynamics.hpp"
#include "flow/export.hpp"
#include "json.hpp"

namespace flow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Bound {
    std::string_view column;
    double lo;
    double hi;
    bool lo_exclusive = false;
};

constexpr Bound kDailyBounds[] = {
    {"work_hours", 0, 16},
    {"meetings_count", 0, std::numeric_limits<double>::infinity()},
    {"emails_received", 0, std::numeric_limits<double>::infinity()},
    {"stress_level", 0, 10},
    {"sleep_hours", 3, 12},
    {"sleep_quality", 0, 10},
    {"mood", 0, 10},
    {"energy", 0, 10},
    {"focus", 0, 10},
    {"exercise_minutes", 0, std::numeric_limits<double>::infinity()},
    {"outdoor_minutes", 0, std::numeric_limits<double>::infinity()},
    {"caffeine_mg", 0, 800},
    {"diet_quality", 0, 10},
    {"screen_time_hours", 0, 16},
    {"calories_intake", 0, std::numeric_limits<double>::infinity(), true},
    {"calories_expended", 0, std::numeric_limits<double>::infinity(), true},
    {"weight_kg", 0, std::numeric_limits<double>::infinity(), true},
};

constexpr Bound kUserBounds[] = {
    {"age", 22, 65},
    {"height_cm", 145, 205},
    {"baseline_bmi", 17, 40},
    {"baseline_weight_kg", 0, std::numeric_limits<double>::infinity(), true},
    {"activity_tendency", 0, 1},
    {"diet_tendency", 0, 1},
    {"caffeine_tendency", 0, 1},
    {"base_stress", 0, 10},
};

bool within(const Bound& b, double v) {
    if (!std::isfinite(v)) return false;
    if (b.lo_exclusive ? v <= b.lo : v < b.lo) return false;
    return v <= b.hi;
}

std::string bound_text(const Bound& b) {
    return fmt::format("{}{}, {}]", b.lo_exclusive ? "(" : "[", b.lo, b.hi);
}

template <typename Enum, std::size_t N>
Enum parse_field_enum(const CsvReader& r, std::size_t i, const std::array<Enum, N>& values) {
    if (auto v = parse_enum(r.field(i), values)) return *v;
    r.fail(fmt::format("column '{}': unknown value '{}'", r.header()[i], r.field(i)));
}

struct UserRow {
    std::string line;
    double baseline_weight_kg = 0.0;
};

struct DayRow {
    DailyRecord record;
    std::string line;
    std::size_t line_number = 0;
};

class Scanner {
public:
    explicit Scanner(const std::filesystem::path& dir) : dir_(dir) {}

    DatasetScan run() {
        load_users();
        load_interventions();
        load_weekly();
        open_daily_all();
        stream_daily();
        finish_counts();
        return std::move(scan_);
    }

private:
    std::filesystem::path file(std::string_view name) const { return dir_ / name; }

    void require_header(const CsvReader& r, const TableSchema& schema) {
        for (const auto& c : schema.columns) r.column(c.name);
    }

    void range_violation(std::string message) {
        if (scan_.range_violations++ == 0) scan_.first_range_violation = std::move(message);
    }

    void load_users() {
        CsvReader r(file(kUsersFile));
        require_header(r, users_schema());
        const auto id = r.column("user_id");
        const auto weight = r.column("baseline_weight_kg");
        std::vector<std::pair<std::size_t, Bound>> bounds;
        for (const auto& b : kUserBounds) bounds.emplace_back(r.column(b.column), b);
        const auto sex = r.column("sex"), profession = r.column("profession"), mode = r.column("work_mode"),
                   chrono = r.column("chronotype");
        while (r.next()) {
            const auto user = static_cast<std::uint32_t>(r.integer(id));
            parse_field_enum(r, sex, kAllSexes);
            parse_field_enum(r, profession, kAllProfessions);
            parse_field_enum(r, mode, kAllWorkModes);
            parse_field_enum(r, chrono, kAllChronotypes);
            for (const auto& [col, b] : bounds) {
                const double v = r.real(col);
                if (!within(b, v)) {
                    range_violation(fmt::format("{}:{}: {}={} outside {}", kUsersFile, r.line_number(), b.column,
                                                r.field(col), bound_text(b)));
                }
            }
            if (!users_.emplace(user, UserRow{r.line(), r.real(weight)}).second) {
                scan_.row_count_problems.push_back(fmt::format("duplicate user_id {} in {}", user, kUsersFile));
            }
            user_order_.push_back(user);
        }
        scan_.users = users_.size();
        scan_.row_counts[std::string(kUsersFile)] = user_order_.size();
    }

    void load_interventions() {
        CsvReader r(file(kInterventionsFile));
        require_header(r, interventions_schema());
        const auto user = r.column("user_id"), type = r.column("type"), start = r.column("start_date"),
                   end = r.column("end_date"), intensity = r.column("intensity"), id = r.column("intervention_id");
        std::uint64_t rows = 0;
        while (r.next()) {
            InterventionEvent e;
            e.intervention_id = static_cast<std::uint64_t>(r.integer(id));
            e.user_id = static_cast<std::uint32_t>(r.integer(user));
            e.type = parse_field_enum(r, type, kAllInterventionTypes);
            e.start_date = r.date(start);
            e.end_date = r.date(end);
            e.intensity = r.real(intensity);
            if (!(e.intensity >= 0.0 && e.intensity <= 1.0)) {
                range_violation(fmt::format("{}:{}: intensity={} outside [0, 1]", kInterventionsFile,
                                            r.line_number(), r.field(intensity)));
            }
            if (e.end_date < e.start_date) {
                range_violation(fmt::format("{}:{}: end_date before start_date", kInterventionsFile, r.line_number()));
            }
            if (!users_.contains(e.user_id)) {
                scan_.row_count_problems.push_back(
                    fmt::format("{}:{}: unknown user_id {}", kInterventionsFile, r.line_number(), e.user_id));
            }
            events_[e.user_id].push_back(e);
            ++rows;
        }
        scan_.intervention_rows = rows;
        scan_.row_counts[std::string(kInterventionsFile)] = rows;
    }

    void load_weekly() {
        CsvReader r(file(kWeeklyFile));
        require_header(r, weekly_schema());
        const auto user = r.column("user_id"), week = r.column("week_index");
        std::uint64_t rows = 0;
        while (r.next()) {
            const auto key = std::pair{static_cast<std::uint32_t>(r.integer(user)), static_cast<int>(r.integer(week))};
            if (!weekly_.emplace(key, r.line()).second) {
                scan_.row_count_problems.push_back(
                    fmt::format("duplicate weekly row for user {} week {}", key.first, key.second));
            }
            ++rows;
        }
        scan_.row_counts[std::string(kWeeklyFile)] = rows;
    }

    void open_daily_all() {
        const auto path = file(kDailyAllFile);
        if (!std::filesystem::exists(path)) return;
        daily_all_.emplace(path);
        scan_.has_daily_all = true;
        const std::string expected = daily_all_schema().header();
        const std::string actual = fmt::format("{}", fmt::join(daily_all_->header(), ","));
        if (actual != expected) {
            join_mismatch(fmt::format("{}:1: header differs from the join of the source tables", kDailyAllFile));
        }
    }

    void join_mismatch(std::string message) {
        if (scan_.join_mismatches++ == 0) scan_.first_join_mismatch = std::move(message);
    }

    void stream_daily() {
        CsvReader r(file(kDailyLogsFile));
        require_header(r, daily_logs_schema());
        const auto c = [&](std::string_view n) { return r.column(n); };
        const auto user = c("user_id"), date = c("date"), workday = c("is_workday"), hours = c("work_hours"),
                   meetings = c("meetings_count"), emails = c("emails_received"), pressure = c("pressure_state"),
                   stress = c("stress_level"), sleep = c("sleep_hours"), quality = c("sleep_quality"), mood = c("mood"),
                   energy = c("energy"), focus = c("focus"), exercise = c("exercise_minutes"),
                   outdoor = c("outdoor_minutes"), caffeine = c("caffeine_mg"), diet = c("diet_quality"),
                   screen = c("screen_time_hours"), intake = c("calories_intake"),
                   expended = c("calories_expended"), weight = c("weight_kg");
        std::vector<std::pair<std::size_t, Bound>> bounds;
        for (const auto& b : kDailyBounds) bounds.emplace_back(r.column(b.column), b);

        std::vector<DayRow> group;
        std::uint64_t rows = 0;
        while (r.next()) {
            ++rows;
            DayRow row;
            auto& rec = row.record;
            rec.user_id = static_cast<std::uint32_t>(r.integer(user));
            rec.date = r.date(date);
            rec.is_workday = r.boolean(workday);
            rec.work_hours = r.real(hours);
            rec.meetings_count = static_cast<unsigned>(std::max<std::int64_t>(0, r.integer(meetings)));
            rec.emails_received = static_cast<unsigned>(std::max<std::int64_t>(0, r.integer(emails)));
            rec.pressure_state = parse_field_enum(r, pressure, kAllPressureStates);
            rec.stress_level = r.real(stress);
            rec.sleep_hours = r.real(sleep);
            rec.sleep_quality = r.real(quality);
            rec.mood = r.real(mood);
            rec.energy = r.real(energy);
            rec.focus = r.real(focus);
            rec.exercise_minutes = static_cast<unsigned>(std::max<std::int64_t>(0, r.integer(exercise)));
            rec.outdoor_minutes = static_cast<unsigned>(std::max<std::int64_t>(0, r.integer(outdoor)));
            rec.caffeine_mg = static_cast<unsigned>(std::max<std::int64_t>(0, r.integer(caffeine)));
            rec.diet_quality = r.real(diet);
            rec.screen_time_hours = r.real(screen);
            rec.calories_intake = r.real(intake);
            rec.calories_expended = r.real(expended);
            rec.weight_kg = r.real(weight);

            for (const auto& [col, b] : bounds) {
                const double v = r.real(col);
                if (!within(b, v)) {
                    range_violation(fmt::format("{}:{}: {}={} outside {}", kDailyLogsFile, r.line_number(), b.column,
                                                r.field(col), bound_text(b)));
                }
                scan_.column_moments[std::string(b.column)].add(v);
            }

            if (!group.empty() && group.front().record.user_id != rec.user_id) {
                process_user(group);
                group.clear();
            }
            row.line = r.line();
            row.line_number = r.line_number();
            group.push_back(std::move(row));
        }
        if (!group.empty()) process_user(group);
        scan_.row_counts[std::string(kDailyLogsFile)] = rows;
        daily_rows_ = rows;

        if (daily_all_) {
            std::uint64_t extra = 0;
            while (daily_all_->next()) ++extra;
            scan_.row_counts[std::string(kDailyAllFile)] = daily_all_rows_ + extra;
            if (extra > 0) {
                join_mismatch(fmt::format("{} has {} rows beyond the daily_logs rows", kDailyAllFile, extra));
            }
        }
    }

    void process_user(const std::vector<DayRow>& rows) {
        const std::uint32_t user = rows.front().record.user_id;
        if (!seen_users_.insert(user).second) {
            scan_.row_count_problems.push_back(
                fmt::format("{}: rows for user {} are not contiguous", kDailyLogsFile, user));
        }
        if (!start_date_) {
            start_date_ = rows.front().record.date;
            scan_.days_per_user = rows.size();
        }
        if (rows.size() != scan_.days_per_user) {
            scan_.row_count_problems.push_back(fmt::format("user {} has {} daily rows, expected {}", user,
                                                           rows.size(), scan_.days_per_user));
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].record.date != add_days(*start_date_, static_cast<int>(i))) {
                scan_.row_count_problems.push_back(fmt::format("{}:{}: user {} date {} out of sequence",
                                                               kDailyLogsFile, rows[i].line_number, user,
                                                               format_date(rows[i].record.date)));
                break;
            }
        }

        const auto user_it = users_.find(user);
        if (user_it == users_.end()) {
            scan_.row_count_problems.push_back(fmt::format("user {} in {} missing from {}", user, kDailyLogsFile,
                                                           kUsersFile));
        }
        static const std::vector<InterventionEvent> kNoEvents;
        const auto ev_it = events_.find(user);
        const auto& events = ev_it == events_.end() ? kNoEvents : ev_it->second;

        std::vector<DailyRecord> records;
        records.reserve(rows.size());
        for (const auto& r : rows) records.push_back(r.record);

        accumulate_statistics(records, events);
        check_weekly(user, records, events);
        if (user_it != users_.end()) {
            check_weight(user, user_it->second.baseline_weight_kg, records);
        }
        if (daily_all_) check_join(user_it == users_.end() ? nullptr : &user_it->second, rows, events);
    }

    void accumulate_statistics(const std::vector<DailyRecord>& records, const std::vector<InterventionEvent>& events) {
        std::vector<double> stress;
        stress.reserve(records.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            stress.push_back(r.stress_level);
            scan_.work_stress.add(r.work_hours, r.stress_level);
            scan_.stress_sleep.add(r.stress_level, r.sleep_hours);
            scan_.stress_mood.add(r.stress_level, r.mood);
            scan_.exercise_mood.add(r.exercise_minutes, r.mood);
            if (i > 0) {
                const double step = std::abs(r.weight_kg - records[i - 1].weight_kg);
                if (step > scan_.max_weight_step) {
                    scan_.max_weight_step = step;
                    scan_.max_weight_step_where = fmt::format("user {} on {}", r.user_id, format_date(r.date));
                }
            }
        }
        scan_.stress_autocorr.push_back(lag1_autocorrelation(stress));

        // Volatility tiers: mean absolute day-to-day change within each 7-day block.
        for (std::size_t first = 0; first < records.size(); first += 7) {
            const std::size_t last = std::min(first + 7, records.size());
            if (last - first < 2) continue;
            double dq = 0.0, ds = 0.0;
            for (std::size_t i = first + 1; i < last; ++i) {
                dq += std::abs(records[i].sleep_quality - records[i - 1].sleep_quality);
                ds += std::abs(records[i].stress_level - records[i - 1].stress_level);
            }
            const double pairs = static_cast<double>(last - first - 1);
            scan_.weekly_abs_delta_quality.add(dq / pairs);
            scan_.weekly_abs_delta_stress.add(ds / pairs);
        }

        const double user_mean = std::accumulate(stress.begin(), stress.end(), 0.0) / stress.size();
        scan_.user_mean_stress.push_back(user_mean);
        for (const auto& r : records) {
            const auto flags = activity_flags(events, r.date);
            const bool any = std::any_of(flags.begin(), flags.end(), [](bool b) { return b; });
            if (flags[index_of(InterventionType::vacation)]) {
                scan_.vacation_stress.add(r.stress_level);
                if (r.stress_level > user_mean) ++scan_.vacation_days_above_user_mean;
            } else if (!any && r.is_workday) {
                scan_.plain_workday_stress.add(r.stress_level);
            }
        }
    }

    void check_weekly(std::uint32_t user, const std::vector<DailyRecord>& records,
                      const std::vector<InterventionEvent>& events) {
        const Date start = start_date_.value_or(records.front().date);
        for (const auto& w : summarize_user(records, events, start)) {
            const auto it = weekly_.find({user, w.week_index});
            const std::string expected = format_weekly_row(w);
            if (it == weekly_.end()) {
                weekly_mismatch(fmt::format("user {} week {}: row missing", user, w.week_index));
                continue;
            }
            if (it->second != expected) {
                const auto want = split_fields(expected);
                const auto got = split_fields(it->second);
                std::string column = "row";
                for (std::size_t i = 0; i < std::min(want.size(), got.size()); ++i) {
                    if (want[i] != got[i]) {
                        column = fmt::format("{}: written {}, recomputed {}", weekly_schema().columns[i].name,
                                             got[i], want[i]);
                        break;
                    }
                }
                weekly_mismatch(fmt::format("user {} week {}: {}", user, w.week_index, column));
            }
        }
    }

    void weekly_mismatch(std::string message) {
        if (scan_.weekly_mismatches++ == 0) scan_.first_weekly_mismatch = std::move(message);
    }

    void check_weight(std::uint32_t user, double initial, const std::vector<DailyRecord>& records) {
        double balance = 0.0;
        for (const auto& r : records) {
            balance += std::clamp((r.calories_intake - r.calories_expended) / kKcalPerKg, -kMaxDailyWeightChangeKg,
                                  kMaxDailyWeightChangeKg);
        }
        const double error = std::abs((records.back().weight_kg - initial) - balance);
        if (!(error <= scan_.max_weight_conservation_error)) {
            scan_.max_weight_conservation_error = std::isnan(error) ? std::numeric_limits<double>::infinity() : error;
            scan_.worst_weight_conservation_user = fmt::format("user {}", user);
        }
    }

    void check_join(const UserRow* user_row, const std::vector<DayRow>& rows,
                    const std::vector<InterventionEvent>& events) {
        const Date start = start_date_.value_or(rows.front().record.date);
        for (const auto& row : rows) {
            if (!daily_all_->next()) {
                join_mismatch(fmt::format("{} ends before {} line {}", kDailyAllFile, kDailyLogsFile,
                                          row.line_number));
                daily_all_exhausted_ = true;
                return;
            }
            ++daily_all_rows_;
            if (user_row == nullptr) {
                join_mismatch(fmt::format("{}:{}: user {} has no users.csv row", kDailyAllFile,
                                          daily_all_->line_number(), row.record.user_id));
                continue;
            }
            const int week = days_between(start, row.record.date) / 7;
            const auto weekly = weekly_.find({row.record.user_id, week});
            if (weekly == weekly_.end()) {
                join_mismatch(fmt::format("{}:{}: no weekly row for user {} week {}", kDailyAllFile,
                                          daily_all_->line_number(), row.record.user_id, week));
                continue;
            }
            const std::string expected = join_daily_all_row(
                user_row->line, row.line, weekly->second,
                format_activity_flags(activity_flags(events, row.record.date)));
            if (daily_all_->line() != expected) {
                join_mismatch(fmt::format("{}:{}: row differs from the join of user {} on {}", kDailyAllFile,
                                          daily_all_->line_number(), row.record.user_id,
                                          format_date(row.record.date)));
            }
        }
    }

    void finish_counts() {
        const std::uint64_t users = user_order_.size();
        const std::uint64_t days = scan_.days_per_user;
        if (daily_rows_ != users * days) {
            scan_.row_count_problems.push_back(
                fmt::format("{} has {} rows, expected {} users x {} days = {}", kDailyLogsFile, daily_rows_, users,
                            days, users * days));
        }
        const auto weekly_rows = scan_.row_counts[std::string(kWeeklyFile)];
        const std::uint64_t weeks = static_cast<std::uint64_t>(week_count(static_cast<int>(days)));
        if (weekly_rows != users * weeks) {
            scan_.row_count_problems.push_back(fmt::format("{} has {} rows, expected {} users x {} weeks = {}",
                                                           kWeeklyFile, weekly_rows, users, weeks, users * weeks));
        }
        if (daily_all_) {
            const auto all_rows = scan_.row_counts[std::string(kDailyAllFile)];
            if (all_rows != daily_rows_) {
                scan_.row_count_problems.push_back(fmt::format("{} has {} rows, {} has {}", kDailyAllFile, all_rows,
                                                               kDailyLogsFile, daily_rows_));
            }
        }
        for (std::uint32_t user : user_order_) {
            if (!seen_users_.contains(user)) {
                scan_.row_count_problems.push_back(fmt::format("user {} has no daily rows", user));
            }
        }
    }

    std::filesystem::path dir_;
    DatasetScan scan_;
    std::unordered_map<std::uint32_t, UserRow> users_;
    std::vector<std::uint32_t> user_order_;
    std::unordered_map<std::uint32_t, std::vector<InterventionEvent>> events_;
    std::map<std::pair<std::uint32_t, int>, std::string> weekly_;
    std::optional<CsvReader> daily_all_;
    bool daily_all_exhausted_ = false;
    std::uint64_t daily_all_rows_ = 0;
    std::uint64_t daily_rows_ = 0;
    std::optional<Date> start_date_;
    std::set<std::uint32_t> seen_users_;
};

CheckResult make(std::string name, bool ok, double observed, std::string threshold, std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    if (!std::isnan(observed)) c.observed = observed;
    c.threshold = std::move(threshold);
    c.detail = std::move(detail);
    return c;
}

CheckResult skip(std::string name, std::string threshold, std::string detail) {
    CheckResult c;
    c.name = std::move(name);
    c.status = CheckStatus::skip;
    c.threshold = std::move(threshold);
    c.detail = std::move(detail);
    return c;
}

CheckResult correlation_check(std::string name, const Comoment& m, double threshold, bool greater) {
    const double r = m.correlation();
    const bool ok = !std::isnan(r) && (greater ? r > threshold : r < threshold);
    return make(std::move(name), ok, r, fmt::format("{} {}", greater ? ">" : "<", threshold),
                std::isnan(r) ? "undefined (zero variance)" : "");
}

}  // namespace

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass:
            return "pass";
        case CheckStatus::fail:
            return "fail";
        case CheckStatus::skip:
            return "skip";
    }
    return "skip";
}

void Comoment::add(double x, double y) {
    ++n_;
    const double dx = x - mean_x_;
    mean_x_ += dx / n_;
    const double dy = y - mean_y_;
    mean_y_ += dy / n_;
    m2x_ += dx * (x - mean_x_);
    m2y_ += dy * (y - mean_y_);
    cxy_ += dx * (y - mean_y_);
}

double Comoment::correlation() const {
    if (n_ < 2 || m2x_ <= 0.0 || m2y_ <= 0.0) return kNaN;
    return cxy_ / std::sqrt(m2x_ * m2y_);
}

void Moments::add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / n_;
    m2_ += d * (x - mean_);
}

double Moments::sd() const { return n_ < 2 ? kNaN : std::sqrt(m2_ / (n_ - 1)); }

double lag1_autocorrelation(const std::vector<double>& xs) {
    if (xs.size() < 3) return kNaN;
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - mean;
        den += d * d;
        if (i + 1 < xs.size()) num += d * (xs[i + 1] - mean);
    }
    return den > 0.0 ? num / den : kNaN;
}

double sample_sd(const std::vector<double>& xs) {
    Moments m;
    for (double x : xs) m.add(x);
    return m.sd();
}

double median(std::vector<double> xs) {
    if (xs.empty()) return kNaN;
    const auto mid = xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2);
    std::nth_element(xs.begin(), mid, xs.end());
    if (xs.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(xs.begin(), mid);
    return 0.5 * (lower + upper);
}

DatasetScan scan_dataset(const std::filesystem::path& dir) {
    for (auto name : {kUsersFile, kDailyLogsFile, kWeeklyFile, kInterventionsFile}) {
        if (!std::filesystem::exists(dir / name)) {
            throw DatasetError(fmt::format("{}: required file missing", (dir / name).string()));
        }
    }
    return Scanner(dir).run();
}

std::vector<CheckResult> check_ranges(const DatasetScan& scan, const ValidationThresholds& t) {
    std::vector<CheckResult> out;
    out.push_back(make("ranges.bounds", scan.range_violations == 0, static_cast<double>(scan.range_violations),
                       "0 out-of-range or non-finite cells",
                       scan.range_violations == 0 ? "" : fmt::format("first: {}", scan.first_range_violation)));

    std::vector<std::string> degenerate;
    for (const auto& [column, m] : scan.column_moments) {
        if (!(m.sd() > 0.0)) degenerate.push_back(column);
    }
    out.push_back(make("ranges.nondegenerate", degenerate.empty(), static_cast<double>(degenerate.size()),
                       "every daily variable has sd > 0",
                       degenerate.empty() ? "" : fmt::format("zero variance: {}", fmt::join(degenerate, ", "))));

    const auto sleep = scan.column_moments.find("sleep_hours");
    const double mean_sleep = sleep == scan.column_moments.end() ? kNaN : sleep->second.mean();
    out.push_back(make("ranges.sleep_centering", mean_sleep >= t.sleep_mean_min && mean_sleep <= t.sleep_mean_max,
                       mean_sleep, fmt::format("in [{}, {}]", t.sleep_mean_min, t.sleep_mean_max)));
    return out;
}

std::vector<CheckResult> check_directional(const DatasetScan& scan, const ValidationThresholds& t) {
    return {
        correlation_check("directional.work_hours_stress", scan.work_stress, t.min_corr_work_stress, true),
        correlation_check("directional.stress_sleep", scan.stress_sleep, t.max_corr_stress_sleep, false),
        correlation_check("directional.stress_mood", scan.stress_mood, t.max_corr_stress_mood, false),
        correlation_check("directional.exercise_mood", scan.exercise_mood, t.min_corr_exercise_mood, true),
    };
}

std::vector<CheckResult> check_temporal(const DatasetScan& scan, const ValidationThresholds& t) {
    std::vector<CheckResult> out;
    // Weights are written at 6 decimals; two roundings can add up to 1e-6.
    const double step_tol = t.max_weight_step_kg + 1e-6;
    out.push_back(make("temporal.weight_step", scan.max_weight_step <= step_tol, scan.max_weight_step,
                       fmt::format("<= {} kg/day", t.max_weight_step_kg),
                       scan.max_weight_step > step_tol ? fmt::format("at {}", scan.max_weight_step_where) : ""));

    std::vector<double> finite;
    for (double a : scan.stress_autocorr) {
        if (!std::isnan(a)) finite.push_back(a);
    }
    if (finite.empty()) {
        out.push_back(skip("temporal.stress_autocorr", fmt::format("median > {}", t.min_stress_autocorr),
                           "no user has a non-constant stress series"));
    } else {
        const double med = median(finite);
        out.push_back(make("temporal.stress_autocorr", med > t.min_stress_autocorr, med,
                           fmt::format("median > {}", t.min_stress_autocorr)));
    }

    const double dq = scan.weekly_abs_delta_quality.mean();
    const double ds = scan.weekly_abs_delta_stress.mean();
    if (scan.weekly_abs_delta_quality.count() == 0) {
        out.push_back(skip("temporal.volatility_tiers", "mean weekly |dQ| < mean weekly |dS|", "fewer than 2 days"));
    } else {
        out.push_back(make("temporal.volatility_tiers", dq < ds, dq, "mean weekly |d sleep_quality| < mean weekly |d stress|",
                           fmt::format("|d sleep_quality| {:.4f}, |d stress| {:.4f}", dq, ds)));
    }
    return out;
}

std::vector<CheckResult> check_heterogeneity_and_interventions(const DatasetScan& scan,
                                                               const ValidationThresholds& t) {
    std::vector<CheckResult> out;
    const std::string sd_threshold = fmt::format("> {}", t.min_user_stress_sd);
    if (scan.user_mean_stress.size() < 2) {
        out.push_back(skip("heterogeneity.user_stress_sd", sd_threshold, "fewer than two users"));
    } else {
        const double sd = sample_sd(scan.user_mean_stress);
        out.push_back(make("heterogeneity.user_stress_sd", sd > t.min_user_stress_sd, sd, sd_threshold));
    }

    const std::string relief_threshold = "vacation mean < non-intervention workday mean";
    const std::string above_threshold = fmt::format(">= {} of vacation days above the user's mean",
                                                    t.min_vacation_above_mean);
    if (scan.intervention_rows == 0 || scan.vacation_stress.count() == 0 ||
        scan.plain_workday_stress.count() == 0) {
        const std::string why = scan.intervention_rows == 0 ? "no interventions in dataset" : "no vacation days";
        out.push_back(skip("interventions.vacation_relief", relief_threshold, why));
        out.push_back(skip("interventions.attenuation", above_threshold, why));
        return out;
    }
    const double vac = scan.vacation_stress.mean();
    const double work = scan.plain_workday_stress.mean();
    out.push_back(make("interventions.vacation_relief", vac < work, vac, relief_threshold,
                       fmt::format("vacation {:.4f} vs workday {:.4f}", vac, work)));
    const double frac =
        static_cast<double>(scan.vacation_days_above_user_mean) / static_cast<double>(scan.vacation_stress.count());
    out.push_back(make("interventions.attenuation", frac >= t.min_vacation_above_mean, frac, above_threshold,
                       fmt::format("{} of {} vacation days", scan.vacation_days_above_user_mean,
                                   scan.vacation_stress.count())));
    return out;
}

std::vector<CheckResult> check_consistency(const DatasetScan& scan, const ValidationThresholds& t) {
    std::vector<CheckResult> out;
    out.push_back(make("consistency.weekly", scan.weekly_mismatches == 0, static_cast<double>(scan.weekly_mismatches),
                       "weekly rows equal recomputation from daily rows",
                       scan.weekly_mismatches == 0 ? "" : fmt::format("first: {}", scan.first_weekly_mismatch)));
    const bool weight_ok = scan.max_weight_conservation_error <= t.weight_conservation_tol_kg;
    out.push_back(make("consistency.weight_conservation", weight_ok, scan.max_weight_conservation_error,
                       fmt::format("<= {} kg", t.weight_conservation_tol_kg),
                       weight_ok ? "" : fmt::format("worst: {}", scan.worst_weight_conservation_user)));
    if (scan.has_daily_all) {
        out.push_back(make("consistency.daily_all_join", scan.join_mismatches == 0,
                           static_cast<double>(scan.join_mismatches), "daily_all rows equal the join of sources",
                           scan.join_mismatches == 0 ? "" : fmt::format("first: {}", scan.first_join_mismatch)));
    } else {
        out.push_back(skip("consistency.daily_all_join", "daily_all rows equal the join of sources",
                           "daily_all.csv not present"));
    }
    out.push_back(make("consistency.row_counts", scan.row_count_problems.empty(),
                       static_cast<double>(scan.row_count_problems.size()), "0 problems",
                       scan.row_count_problems.empty() ? "" : fmt::format("first: {}", scan.row_count_problems.front())));
    return out;
}

const CheckResult* ValidationReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["overall_pass"] = pass;
    doc["fingerprint"] = fingerprint;
    auto& list = doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["status"] = to_string(c.status);
        j["observed"] = c.observed ? nlohmann::ordered_json(*c.observed) : nlohmann::ordered_json(nullptr);
        j["threshold"] = c.threshold;
        j["detail"] = c.detail;
        list.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& c : checks) {
        out += fmt::format("{:<4} {:<34} observed={:<12} threshold: {}{}\n", to_string(c.status), c.name,
                           c.observed ? fmt::format("{:.6g}", *c.observed) : "-", c.threshold,
                           c.detail.empty() ? "" : fmt::format(" ({})", c.detail));
    }
    out += fmt::format("overall: {}\n", pass ? "PASS" : "FAIL");
    return out;
}

ValidationReport validate_dataset(const std::filesystem::path& dir, const ValidationThresholds& thresholds) {
    const DatasetScan scan = scan_dataset(dir);
    ValidationReport report;
    report.fingerprint = scan.row_counts;
    for (auto group : {check_ranges, check_directional, check_temporal, check_heterogeneity_and_interventions,
                       check_consistency}) {
        auto results = group(scan, thresholds);
        report.checks.insert(report.checks.end(), std::make_move_iterator(results.begin()),
                             std::make_move_iterator(results.end()));
    }
    report.pass = std::none_of(report.checks.begin(), report.checks.end(),
                               [](const CheckResult& c) { return c.status == CheckStatus::fail; });
    return report;
}

}  // namespace flow
