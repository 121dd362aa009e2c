#include "tcv/timestamp.hpp"

#include <array>
#include <cstdio>

#include "tcv/common.hpp"

namespace tcv {

namespace {

// Civil-date conversions, proleptic Gregorian calendar (Howard Hinnant's
// days_from_civil / civil_from_days).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t* y, unsigned* m, unsigned* d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    *d = doy - (153 * mp + 2) / 5 + 1;
    *m = mp + (mp < 10 ? 3 : -9);
    *y = yr + (*m <= 2);
}

bool is_leap(std::int64_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30,
                                         31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

int digit(char c) { return (c >= '0' && c <= '9') ? c - '0' : -1; }

[[noreturn]] void bad(std::string_view text) {
    throw InputError("unparseable timestamp: \"" + std::string(text) +
                     "\" (expected YYYY-MM-DD HH:MM)");
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
    if (text.size() != 16 || text[4] != '-' || text[7] != '-' ||
        text[10] != ' ' || text[13] != ':') {
        bad(text);
    }
    long fields[5] = {0, 0, 0, 0, 0};  // year month day hour minute
    static constexpr int kStart[5] = {0, 5, 8, 11, 14};
    static constexpr int kLen[5] = {4, 2, 2, 2, 2};
    for (int f = 0; f < 5; ++f) {
        for (int i = 0; i < kLen[f]; ++i) {
            const int d = digit(text[kStart[f] + i]);
            if (d < 0) bad(text);
            fields[f] = fields[f] * 10 + d;
        }
    }
    const long year = fields[0], month = fields[1], day = fields[2];
    const long hour = fields[3], minute = fields[4];
    if (month < 1 || month > 12 || day < 1 ||
        day > static_cast<long>(days_in_month(year, static_cast<unsigned>(month))) ||
        hour > 23 || minute > 59) {
        bad(text);
    }
    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    return Timestamp{days * 1440 + hour * 60 + minute};
}

std::string format_timestamp(Timestamp t) {
    std::int64_t minutes = t.minutes;
    std::int64_t days = minutes / 1440;
    std::int64_t rem = minutes % 1440;
    if (rem < 0) {
        rem += 1440;
        days -= 1;
    }
    std::int64_t year;
    unsigned month, day;
    civil_from_days(days, &year, &month, &day);
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%04lld-%02u-%02u %02lld:%02lld",
                  static_cast<long long>(year), month, day,
                  static_cast<long long>(rem / 60), static_cast<long long>(rem % 60));
    return std::string(buf.data());
}

}  // namespace tcv
