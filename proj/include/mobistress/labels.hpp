#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mobistress/date.hpp"

namespace mobistress {

struct StressResponse {
  std::string user_id;
  std::int64_t timestamp = 0;
  int level = 3;  // 1 (least stressed) .. 5
};

enum class StressClass : int { BelowMedian = 0, Median = 1, AboveMedian = 2 };

inline constexpr int kClassCount = 3;

/// Maps one of the five EMA choices (or a numeric code "1".."5") to the
/// monotone stress scale. Throws Error(UnknownChoice).
int response_to_level(std::string_view choice);

using UserDay = std::pair<std::string, Date>;

std::map<UserDay, double> daily_average(std::span<const StressResponse> responses,
                                        int utc_offset_hours);

/// Median of the values; midpoint of the two central values for even counts.
double median(std::vector<double> values);

std::map<Date, StressClass> tri_class(const std::map<Date, double>& user_daily);

struct LabelRow {
  std::string user_id;
  Date date;
  double daily_mean = 0.0;
  StressClass label = StressClass::Median;
};

struct LabelSet {
  std::vector<LabelRow> rows;  // sorted by (user, date)
  std::size_t excluded_users = 0;
};

/// Daily averaging then per-user tri-classing; users with fewer than
/// `min_days_per_user` labeled days are excluded.
LabelSet label_responses(std::span<const StressResponse> responses, int utc_offset_hours,
                         int min_days_per_user);

}  // namespace mobistress
