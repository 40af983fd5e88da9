#include "polarmine/time_util.hpp"

#include <cstdio>

namespace polarmine {

namespace {

using days = std::chrono::days;
using sys_days = std::chrono::sys_days;

std::optional<Timestamp> make_ts(int y, int mo, int d, int h, int mi, int s) {
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) return std::nullopt;
    auto dp = sys_days{ymd};
    return Timestamp{dp.time_since_epoch().count() * std::int64_t{86400} + h * 3600 + mi * 60 + s};
}

}  // namespace

std::optional<Timestamp> parse_iso8601(const std::string& s) {
    int y, mo, d, h, mi, sec;
    int n = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d%n", &y, &mo, &d, &h, &mi, &sec, &n) != 6)
        return std::nullopt;
    // Remainder must be empty, "Z", or a fractional part followed by "Z"/"+00:00".
    std::string rest = s.substr(static_cast<size_t>(n));
    if (!rest.empty() && rest[0] == '.') {
        size_t i = 1;
        while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
        rest = rest.substr(i);
    }
    if (!(rest.empty() || rest == "Z" || rest == "+00:00" || rest == "+0000"))
        return std::nullopt;
    return make_ts(y, mo, d, h, mi, sec);
}

std::optional<Timestamp> parse_date(const std::string& s) {
    int y, mo, d;
    int n = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%d%n", &y, &mo, &d, &n) != 3) return std::nullopt;
    if (static_cast<size_t>(n) != s.size()) return std::nullopt;
    return make_ts(y, mo, d, 0, 0, 0);
}

std::string format_iso8601(Timestamp ts) {
    std::int64_t dcount = ts / 86400;
    std::int64_t rem = ts % 86400;
    if (rem < 0) {
        rem += 86400;
        --dcount;
    }
    auto ymd = std::chrono::year_month_day{sys_days{days{dcount}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), int(rem / 3600),
                  int(rem / 60 % 60), int(rem % 60));
    return buf;
}

std::string format_day(Day d) {
    auto ymd = std::chrono::year_month_day{sys_days{days{d.days_since_epoch}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

}  // namespace polarmine
