#include "casecast/date.hpp"

#include <charconv>
#include <cstdio>

#include "casecast/error.hpp"

namespace casecast {

namespace {

int parse_int_field(const char* begin, const char* end, const std::string& context) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || begin == end) {
        throw Error(errc::parse_error, "invalid date component in '" + context + "'");
    }
    return value;
}

Date make_date(int year, int month, int day, const std::string& context) {
    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{static_cast<unsigned>(month)},
                                          std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) {
        throw Error(errc::parse_error, "invalid calendar date '" + context + "'");
    }
    return std::chrono::sys_days{ymd};
}

}  // namespace

Date parse_mdy(const std::string& text) {
    const auto first = text.find('/');
    const auto second = text.find('/', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw Error(errc::parse_error, "expected M/D/YY date, got '" + text + "'");
    }
    const char* base = text.data();
    const int month = parse_int_field(base, base + first, text);
    const int day = parse_int_field(base + first + 1, base + second, text);
    int year = parse_int_field(base + second + 1, base + text.size(), text);
    if (year < 100) {
        year += 2000;
    }
    return make_date(year, month, day, text);
}

Date parse_iso(const std::string& text) {
    // Strict calendar-date shape: four-digit year, two-digit month and day.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw Error(errc::parse_error, "expected YYYY-MM-DD date, got '" + text + "'");
    }
    const char* base = text.data();
    const int year = parse_int_field(base, base + 4, text);
    const int month = parse_int_field(base + 5, base + 7, text);
    const int day = parse_int_field(base + 8, base + 10, text);
    return make_date(year, month, day, text);
}

std::string format_mdy(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%u/%u/%02d", static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<int>(ymd.year()) % 100);
    return buf;
}

std::string format_iso(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

}  // namespace casecast
