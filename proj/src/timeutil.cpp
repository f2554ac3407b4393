#include "flowkit/timeutil.hpp"

#include <cctype>

#include <fmt/format.h>

namespace flowkit {
namespace {

using namespace std::chrono;

// Reads exactly `width` digits at `pos`.
bool read_digits(std::string_view s, std::size_t& pos, int width, int& out) {
  if (pos + width > s.size()) return false;
  int v = 0;
  for (int i = 0; i < width; ++i) {
    char c = s[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
  }
  pos += width;
  out = v;
  return true;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c) return false;
  ++pos;
  return true;
}

std::optional<Date> read_date(std::string_view s, std::size_t& pos) {
  int y = 0, m = 0, d = 0;
  if (!read_digits(s, pos, 4, y) || !expect(s, pos, '-') || !read_digits(s, pos, 2, m) ||
      !expect(s, pos, '-') || !read_digits(s, pos, 2, d))
    return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  std::size_t pos = 0;
  auto date = read_date(s, pos);
  if (!date) return std::nullopt;
  if (pos >= s.size() || (s[pos] != 'T' && s[pos] != ' ')) return std::nullopt;
  ++pos;
  int hh = 0, mm = 0, ss = 0;
  if (!read_digits(s, pos, 2, hh) || !expect(s, pos, ':') || !read_digits(s, pos, 2, mm))
    return std::nullopt;
  if (pos < s.size() && s[pos] == ':') {
    ++pos;
    if (!read_digits(s, pos, 2, ss)) return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;

  int offset = 0;
  if (pos < s.size() && s[pos] == ' ') ++pos;
  if (pos < s.size()) {
    char c = s[pos];
    if (c == 'Z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      ++pos;
      int oh = 0, om = 0;
      if (!read_digits(s, pos, 2, oh)) return std::nullopt;
      if (pos < s.size() && s[pos] == ':') ++pos;
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])) &&
          !read_digits(s, pos, 2, om))
        return std::nullopt;
      if (oh > 14 || om > 59) return std::nullopt;
      offset = (c == '-' ? -1 : 1) * (oh * 60 + om);
    }
  }
  // Only whitespace-separated trailing text is tolerated.
  if (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) return std::nullopt;

  auto local = sys_seconds{*date} + hours{hh} + minutes{mm} + seconds{ss};
  return local - minutes{offset};
}

std::string format_timestamp(Timestamp ts) {
  auto d = floor<days>(ts);
  year_month_day ymd{d};
  auto rest = ts - d;
  auto h = duration_cast<hours>(rest);
  auto m = duration_cast<minutes>(rest - h);
  auto s = rest - h - m;
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     h.count(), m.count(), s.count());
}

std::optional<Date> parse_date(std::string_view text) {
  std::size_t pos = 0;
  auto d = read_date(text, pos);
  if (!d || pos != text.size()) return std::nullopt;
  return d;
}

std::string format_date(Date d) {
  year_month_day ymd{d};
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::optional<ClockTime> parse_clock_time(std::string_view text) {
  std::size_t pos = 0;
  int h = 0, m = 0;
  if (!read_digits(text, pos, 2, h) || !expect(text, pos, ':') || !read_digits(text, pos, 2, m) ||
      pos != text.size() || h > 24 || m > 59 || (h == 24 && m != 0))
    return std::nullopt;
  return ClockTime{h * 60 + m};
}

std::string format_clock_time(ClockTime t) {
  return fmt::format("{:02}:{:02}", t.minutes / 60, t.minutes % 60);
}

Date local_date(Timestamp ts, int offset_minutes) {
  return floor<days>(ts + minutes{offset_minutes});
}

int local_minute_of_day(Timestamp ts, int offset_minutes) {
  auto local = ts + minutes{offset_minutes};
  return static_cast<int>(duration_cast<minutes>(local - floor<days>(local)).count());
}

Timestamp to_utc(Date d, ClockTime t, int offset_minutes) {
  return sys_seconds{d} + minutes{t.minutes} - minutes{offset_minutes};
}

}  // namespace flowkit
