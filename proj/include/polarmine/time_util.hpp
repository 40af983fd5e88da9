#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

namespace polarmine {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

// Calendar day, UTC truncation of a Timestamp.
struct Day {
    std::int32_t days_since_epoch = 0;

    auto operator<=>(const Day&) const = default;
};

inline Day day_of(Timestamp ts) {
    // Floor division so pre-1970 timestamps bucket correctly.
    std::int64_t d = ts / 86400;
    if (ts % 86400 < 0) --d;
    return Day{static_cast<std::int32_t>(d)};
}

// Parses "YYYY-MM-DDTHH:MM:SSZ" (fractional seconds tolerated and ignored).
std::optional<Timestamp> parse_iso8601(const std::string& s);

// Parses "YYYY-MM-DD" into the timestamp of midnight UTC.
std::optional<Timestamp> parse_date(const std::string& s);

std::string format_iso8601(Timestamp ts);
std::string format_day(Day d);

}  // namespace polarmine
