#include "mobistress/labels.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "mobistress/error.hpp"

namespace mobistress {

namespace {

constexpr double kTieTolerance = 1e-9;

std::string normalize(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
  }
  return out;
}

}  // namespace

int response_to_level(std::string_view choice) {
  static const std::array<std::pair<std::string_view, int>, 5> kChoices{{
      {"feeling great", 1},
      {"feeling good", 2},
      {"a little stressed", 3},
      {"definitely stressed", 4},
      {"stressed out", 5},
  }};
  const std::string key = normalize(choice);
  for (const auto& [text, level] : kChoices) {
    if (key == text) return level;
  }
  if (key.size() == 1 && key[0] >= '1' && key[0] <= '5') return key[0] - '0';
  throw Error(ErrorKind::UnknownChoice, "unrecognized stress response '" + std::string(choice) + "'");
}

std::map<UserDay, double> daily_average(std::span<const StressResponse> responses,
                                        int utc_offset_hours) {
  std::map<UserDay, std::pair<double, int>> sums;
  for (const StressResponse& r : responses) {
    auto& [sum, count] = sums[{r.user_id, local_date(r.timestamp, utc_offset_hours)}];
    sum += r.level;
    ++count;
  }
  std::map<UserDay, double> out;
  for (const auto& [key, acc] : sums) out.emplace(key, acc.first / acc.second);
  return out;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::map<Date, StressClass> tri_class(const std::map<Date, double>& user_daily) {
  std::vector<double> means;
  means.reserve(user_daily.size());
  for (const auto& [date, mean] : user_daily) means.push_back(mean);
  const double m = median(means);
  std::map<Date, StressClass> out;
  for (const auto& [date, mean] : user_daily) {
    StressClass c = StressClass::AboveMedian;
    if (std::abs(mean - m) <= kTieTolerance) {
      c = StressClass::Median;
    } else if (mean < m) {
      c = StressClass::BelowMedian;
    }
    out.emplace(date, c);
  }
  return out;
}

LabelSet label_responses(std::span<const StressResponse> responses, int utc_offset_hours,
                         int min_days_per_user) {
  std::map<std::string, std::map<Date, double>> by_user;
  for (const auto& [key, mean] : daily_average(responses, utc_offset_hours)) {
    by_user[key.first][key.second] = mean;
  }
  LabelSet out;
  for (const auto& [user, daily] : by_user) {
    if (static_cast<int>(daily.size()) < min_days_per_user) {
      ++out.excluded_users;
      continue;
    }
    const auto classes = tri_class(daily);
    for (const auto& [date, mean] : daily) {
      out.rows.push_back({user, date, mean, classes.at(date)});
    }
  }
  return out;
}

}  // namespace mobistress
