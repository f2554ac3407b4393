#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace flowkit {

// All instants are UTC with second resolution.
using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;
using Minutes = std::chrono::minutes;

// Minutes since local midnight.
struct ClockTime {
  int minutes = 0;

  friend auto operator<=>(const ClockTime&, const ClockTime&) = default;
};

// Accepts `YYYY-MM-DD[T| ]HH:MM[:SS]` followed by an optional `Z`,
// `+HH:MM`, `+HHMM` or `+HH` offset. Without an offset the time is UTC.
// Trailing text after whitespace (e.g. svn's "(Mon, 23 Aug 2010)") is ignored.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// `YYYY-MM-DDTHH:MM:SSZ`
std::string format_timestamp(Timestamp ts);

std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

std::optional<ClockTime> parse_clock_time(std::string_view text);
std::string format_clock_time(ClockTime t);

// Calendar date of `ts` at a site `offset_minutes` east of UTC.
Date local_date(Timestamp ts, int offset_minutes);

// Minutes since local midnight at that offset.
int local_minute_of_day(Timestamp ts, int offset_minutes);

// UTC instant of local wall-clock `t` on local date `d`.
Timestamp to_utc(Date d, ClockTime t, int offset_minutes);

}  // namespace flowkit
