#pragma once

// Sanity-check suite for a dataset directory in the release CSV format. Reads
// only the files, never the generator, so third-party data can be checked.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flow {

struct ValidationThresholds {
    double min_corr_work_stress = 0.15;
    double max_corr_stress_sleep = -0.15;
    double max_corr_stress_mood = -0.15;
    double min_corr_exercise_mood = 0.05;
    double sleep_mean_min = 6.7;
    double sleep_mean_max = 7.3;
    double max_weight_step_kg = 0.3;
    double min_stress_autocorr = 0.3;
    double min_user_stress_sd = 0.5;
    double min_vacation_above_mean = 0.10;
    double weight_conservation_tol_kg = 1e-6;
};

enum class CheckStatus { pass, fail, skip };

std::string_view to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::skip;
    std::optional<double> observed;
    std::string threshold;
    std::string detail;
};

/// Running Pearson correlation (numerically stable co-moments).
class Comoment {
public:
    void add(double x, double y);
    std::uint64_t count() const { return n_; }
    /// NaN when either variable has zero variance.
    double correlation() const;

private:
    std::uint64_t n_ = 0;
    double mean_x_ = 0, mean_y_ = 0, m2x_ = 0, m2y_ = 0, cxy_ = 0;
};

/// Running mean/variance (Welford).
class Moments {
public:
    void add(double x);
    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double sd() const;

private:
    std::uint64_t n_ = 0;
    double mean_ = 0, m2_ = 0;
};

/// Lag-1 autocorrelation; NaN for constant or too-short series.
double lag1_autocorrelation(const std::vector<double>& xs);

/// Sample standard deviation; NaN for fewer than two values.
double sample_sd(const std::vector<double>& xs);

double median(std::vector<double> xs);

/// Everything the checks need, gathered in one streaming pass over the files.
struct DatasetScan {
    std::map<std::string, std::uint64_t> row_counts;
    bool has_daily_all = false;
    std::uint64_t users = 0;
    std::uint64_t days_per_user = 0;
    std::vector<std::string> row_count_problems;

    // ranges
    std::uint64_t range_violations = 0;
    std::string first_range_violation;
    std::map<std::string, Moments> column_moments;

    // directional
    Comoment work_stress, stress_sleep, stress_mood, exercise_mood;

    // temporal
    double max_weight_step = 0.0;
    std::string max_weight_step_where;
    std::vector<double> stress_autocorr;
    Moments weekly_abs_delta_quality;
    Moments weekly_abs_delta_stress;

    // heterogeneity and interventions
    std::vector<double> user_mean_stress;
    std::uint64_t intervention_rows = 0;
    Moments vacation_stress;
    Moments plain_workday_stress;
    std::uint64_t vacation_days_above_user_mean = 0;

    // consistency
    std::uint64_t weekly_mismatches = 0;
    std::string first_weekly_mismatch;
    double max_weight_conservation_error = 0.0;
    std::string worst_weight_conservation_user;
    std::uint64_t join_mismatches = 0;
    std::string first_join_mismatch;
};

/// Reads users.csv, daily_logs.csv, weekly_summaries.csv, interventions.csv and,
/// when present, daily_all.csv. Throws DatasetError (naming file and line) on a
/// missing or unparseable file.
DatasetScan scan_dataset(const std::filesystem::path& dir);

std::vector<CheckResult> check_ranges(const DatasetScan& scan, const ValidationThresholds& t);
std::vector<CheckResult> check_directional(const DatasetScan& scan, const ValidationThresholds& t);
std::vector<CheckResult> check_temporal(const DatasetScan& scan, const ValidationThresholds& t);
std::vector<CheckResult> check_heterogeneity_and_interventions(const DatasetScan& scan, const ValidationThresholds& t);
std::vector<CheckResult> check_consistency(const DatasetScan& scan, const ValidationThresholds& t);

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::map<std::string, std::uint64_t> fingerprint;
    bool pass = false;

    const CheckResult* find(std::string_view name) const;
    std::string to_json() const;
    std::string summary() const;
};

ValidationReport validate_dataset(const std::filesystem::path& dir, const ValidationThresholds& thresholds = {});

}  // namespace flow
