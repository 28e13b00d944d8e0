#include "mobistress/date.hpp"

#include <charconv>
#include <cstdio>

#include "mobistress/error.hpp"

namespace mobistress {

namespace {

constexpr std::int64_t kSecondsPerDay = 86'400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Date local_date(std::int64_t timestamp, int utc_offset_hours) {
  const std::int64_t local = timestamp + static_cast<std::int64_t>(utc_offset_hours) * 3600;
  return Date{std::chrono::days{floor_div(local, kSecondsPerDay)}};
}

std::int64_t local_midnight(Date date, int utc_offset_hours) {
  return static_cast<std::int64_t>(date.time_since_epoch().count()) * kSecondsPerDay -
         static_cast<std::int64_t>(utc_offset_hours) * 3600;
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Date parse_date(std::string_view text) {
  auto bad = [&] { return Error(ErrorKind::FormatError, "bad date '" + std::string(text) + "'"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  unsigned m = 0, d = 0;
  auto parse = [&](std::size_t pos, std::size_t len, auto& out) {
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    if (ec != std::errc{} || ptr != first + len) throw bad();
  };
  parse(0, 4, y);
  parse(5, 2, m);
  parse(8, 2, d);
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) throw bad();
  return Date{ymd};
}

bool is_weekend(Date date) {
  const std::chrono::weekday wd{date};
  return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

}  // namespace mobistress
