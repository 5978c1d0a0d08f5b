#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace flow {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Throws std::invalid_argument.
Date parse_date(std::string_view text);

std::string format_date(Date date);

Date add_days(Date date, int days);

/// Signed number of days from `from` to `to`.
int days_between(Date from, Date to);

inline constexpr Date make_date(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

}  // namespace flow
