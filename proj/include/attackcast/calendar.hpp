#pragma once

#include <cstdint>
#include <string>

namespace attackcast {

// All dates are integer day indices: days since 1970-01-01 UTC.
using DayIndex = std::int64_t;

DayIndex day_from_ymd(int year, unsigned month, unsigned day);

struct Ymd {
    int year;
    unsigned month;
    unsigned day;
};

Ymd ymd_from_day(DayIndex day);

/// Parses "YYYY-MM-DD". Throws ParseError (line reported as 0) on malformed input.
DayIndex parse_date(const std::string& text);
std::string format_date(DayIndex day);

/// First day of the calendar month containing `day`.
DayIndex month_start(DayIndex day);
/// First day of the month `offset` months away from the month containing `day`.
DayIndex add_months(DayIndex day, int offset);
/// Number of days in the calendar month containing `day`.
int days_in_month(DayIndex day);
/// Monday on or before `day` (ISO week start).
DayIndex iso_week_start(DayIndex day);

} // namespace attackcast
