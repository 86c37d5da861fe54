#include "attackcast/calendar.hpp"

#include "attackcast/errors.hpp"

#include <chrono>
#include <cstdio>

namespace attackcast {

namespace {
namespace chr = std::chrono;

chr::year_month_day to_ymd_type(DayIndex day) {
    return chr::year_month_day{chr::sys_days{chr::days{day}}};
}
} // namespace

DayIndex day_from_ymd(int year, unsigned month, unsigned day) {
    const chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
    if (!ymd.ok()) {
        throw ParseError("invalid calendar date " + std::to_string(year) + "-" +
                             std::to_string(month) + "-" + std::to_string(day),
                         0);
    }
    return chr::sys_days{ymd}.time_since_epoch().count();
}

Ymd ymd_from_day(DayIndex day) {
    const auto ymd = to_ymd_type(day);
    return Ymd{int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day())};
}

DayIndex parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3 ||
        text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw ParseError("malformed date '" + text + "', expected YYYY-MM-DD", 0);
    }
    return day_from_ymd(y, m, d);
}

std::string format_date(DayIndex day) {
    const Ymd ymd = ymd_from_day(day);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", ymd.year, ymd.month, ymd.day);
    return buf;
}

DayIndex month_start(DayIndex day) {
    const auto ymd = to_ymd_type(day);
    return chr::sys_days{ymd.year() / ymd.month() / 1}.time_since_epoch().count();
}

DayIndex add_months(DayIndex day, int offset) {
    auto ymd = to_ymd_type(month_start(day));
    const chr::year_month ym = chr::year_month{ymd.year(), ymd.month()} + chr::months{offset};
    return chr::sys_days{ym.year() / ym.month() / 1}.time_since_epoch().count();
}

int days_in_month(DayIndex day) {
    return static_cast<int>(add_months(day, 1) - month_start(day));
}

DayIndex iso_week_start(DayIndex day) {
    const chr::weekday wd{chr::sys_days{chr::days{day}}};
    return day - (wd.iso_encoding() - 1);
}

} // namespace attackcast
