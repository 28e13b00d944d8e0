#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace mobistress {

using Date = std::chrono::sys_days;

/// Local calendar date of an epoch timestamp under a fixed UTC offset.
Date local_date(std::int64_t timestamp, int utc_offset_hours);

/// Epoch seconds of local midnight starting `date`.
std::int64_t local_midnight(Date date, int utc_offset_hours);

std::string format_date(Date date);

/// Parses YYYY-MM-DD; throws Error(FormatError) otherwise.
Date parse_date(std::string_view text);

bool is_weekend(Date date);

}  // namespace mobistress
