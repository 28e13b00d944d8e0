#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mobistress/dataset.hpp"
#include "mobistress/geo_trace.hpp"
#include "mobistress/labels.hpp"

namespace mobistress {

/// How a day's planned mobility moves the latent stress mean.
struct SignalSpec {
  double entropy_coef = 0.6;   // per nat of planned dwell entropy
  double weekend_coef = -0.9;  // added on Saturdays and Sundays
  double distance_coef = 0.1;  // per km of planned travel
};

/// Probability of visiting campus / a leisure place on a given day type.
struct DayTypeSpec {
  double weekday_campus = 0.95;
  double weekday_leisure = 0.35;
  double weekend_campus = 0.15;
  double weekend_leisure = 0.55;
};

struct CohortConfig {
  int n_users = 20;
  TermCalendar term{Date{std::chrono::year{2013} / 3 / 27}, Date{std::chrono::year{2013} / 5 / 25}};
  int utc_offset_hours = -4;
  GeoPoint anchor{0, 43.7044, -72.2887};
  int places_per_user = 3;         // home, campus, then leisure places
  double place_spread_m = 3000.0;  // place centers within this distance of the anchor
  double min_radius_m = 20.0;
  double max_radius_m = 60.0;
  double gps_noise_scale = 1.0;  // fix jitter sigma = radius * scale
  int day_start_hour = 8;
  int day_end_hour = 24;
  int fix_interval_s = 1200;
  int fix_jitter_s = 120;
  double walking_speed_mps = 1.4;
  double response_day_prob = 0.9;
  double second_response_prob = 0.1;
  double base_min = 1.8;  // per-user latent stress baseline range
  double base_max = 2.8;
  SignalSpec signal;
  DayTypeSpec day_types;
  double noise = 0.25;
  std::uint64_t seed = 7;

  /// Throws Error(ConfigInvalid).
  void validate() const;
};

struct GroundTruthDay {
  std::string user_id;
  Date date;
  bool weekend = false;
  int places_visited = 1;
  double planned_entropy = 0.0;
  double planned_distance_m = 0.0;
  double stress_mean = 0.0;
  int responses = 0;
};

struct Cohort {
  std::map<std::string, std::vector<GeoPoint>> gps;
  std::vector<StressResponse> ema;
  std::vector<GroundTruthDay> truth;
};

Cohort generate(const CohortConfig& cfg);

}  // namespace mobistress
