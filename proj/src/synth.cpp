#include "mobistress/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mobistress/error.hpp"
#include "mobistress/rng.hpp"

namespace mobistress {

void CohortConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::ConfigInvalid, msg); };
  if (n_users < 1) fail("n_users must be at least 1");
  if (term.first_day > term.last_day) fail("term first day is after its last day");
  if (utc_offset_hours < -12 || utc_offset_hours > 14) fail("utc offset must lie in [-12, 14]");
  if (places_per_user < 1) fail("places_per_user must be at least 1");
  if (!(place_spread_m >= 0.0 && place_spread_m <= 15000.0)) fail("place_spread_m must lie in [0, 15000]");
  if (!(min_radius_m > 0.0 && max_radius_m >= min_radius_m)) fail("place radii must be positive");
  if (!(gps_noise_scale >= 0.0)) fail("gps_noise_scale must be non-negative");
  if (day_start_hour < 0 || day_end_hour > 24 || day_start_hour >= day_end_hour) {
    fail("waking hours must satisfy 0 <= start < end <= 24");
  }
  if (fix_interval_s < 1) fail("fix_interval_s must be positive");
  if (fix_jitter_s < 0 || 2 * fix_jitter_s >= fix_interval_s) {
    fail("fix_jitter_s must be non-negative and below half the fix interval");
  }
  if (!(walking_speed_mps > 0.0)) fail("walking speed must be positive");
  auto prob = [&](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) fail(std::string(name) + " must be a probability");
  };
  prob(response_day_prob, "response_day_prob");
  prob(second_response_prob, "second_response_prob");
  prob(day_types.weekday_campus, "weekday_campus");
  prob(day_types.weekday_leisure, "weekday_leisure");
  prob(day_types.weekend_campus, "weekend_campus");
  prob(day_types.weekend_leisure, "weekend_leisure");
  if (!(noise >= 0.0)) fail("noise must be non-negative");
  if (!(base_max >= base_min)) fail("base_max must be >= base_min");
}

namespace {

struct Place {
  GeoPoint center;
  double radius_m = 0.0;
};

struct Segment {
  double t0 = 0.0;  // seconds since the start of the waking window
  double t1 = 0.0;
  bool travel = false;
  int from = 0;  // place index; also the dwell place
  int to = 0;
};

GeoPoint offset_point(const GeoPoint& origin, double east_m, double north_m) {
  return unproject_local({east_m, north_m}, origin);
}

GeoPoint random_in_disk(Rng& rng, const GeoPoint& origin, double radius_m) {
  const double r = radius_m * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return offset_point(origin, r * std::cos(theta), r * std::sin(theta));
}

std::string user_name(int u) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "u%02d", u);
  return buf;
}

void generate_user(const CohortConfig& cfg, int u, Cohort& out) {
  Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(u)));
  const std::string user = user_name(u);

  std::vector<Place> places;
  for (int p = 0; p < cfg.places_per_user; ++p) {
    const double spread = p == 1 ? std::min(300.0, cfg.place_spread_m) : cfg.place_spread_m;
    places.push_back({random_in_disk(rng, cfg.anchor, spread),
                      rng.uniform(cfg.min_radius_m, cfg.max_radius_m)});
  }
  const double base = rng.uniform(cfg.base_min, cfg.base_max);
  const double window = (cfg.day_end_hour - cfg.day_start_hour) * 3600.0;

  std::vector<GeoPoint>& fixes = out.gps[user];
  for (Date date = cfg.term.first_day; date <= cfg.term.last_day; date += std::chrono::days{1}) {
    const bool weekend = is_weekend(date);
    const double p_campus = weekend ? cfg.day_types.weekend_campus : cfg.day_types.weekday_campus;
    const double p_leisure = weekend ? cfg.day_types.weekend_leisure : cfg.day_types.weekday_leisure;

    // Itinerary: home, [campus], [leisure], home.
    std::vector<int> stops{0};
    std::vector<double> weights{rng.uniform(1.0, 2.0)};
    const bool campus = rng.bernoulli(p_campus);
    const bool leisure = rng.bernoulli(p_leisure);
    const int leisure_place =
        cfg.places_per_user > 2 ? 2 + static_cast<int>(rng.index(places.size() - 2)) : -1;
    if (campus && cfg.places_per_user >= 2) {
      stops.push_back(1);
      weights.push_back(rng.uniform(3.0, 5.0));
    }
    if (leisure && leisure_place >= 0) {
      stops.push_back(leisure_place);
      weights.push_back(rng.uniform(1.0, 2.5));
    }
    const double evening = rng.uniform(2.0, 4.0);
    if (stops.size() > 1) {
      stops.push_back(0);
      weights.push_back(evening);
    }

    double travel_total = 0.0;
    std::vector<double> legs;
    for (std::size_t s = 0; s + 1 < stops.size(); ++s) {
      const double d = haversine_m(places[stops[s]].center, places[stops[s + 1]].center);
      legs.push_back(d);
      travel_total += d;
    }
    const double travel_time = travel_total / cfg.walking_speed_mps;
    const double dwell_total = std::max(0.0, window - travel_time);
    double weight_sum = 0.0;
    for (double w : weights) weight_sum += w;

    std::vector<Segment> timeline;
    std::vector<double> dwell_by_place(places.size(), 0.0);
    double t = 0.0;
    for (std::size_t s = 0; s < stops.size(); ++s) {
      const double dwell = dwell_total * weights[s] / weight_sum;
      timeline.push_back({t, t + dwell, false, stops[s], stops[s]});
      dwell_by_place[static_cast<std::size_t>(stops[s])] += dwell;
      t += dwell;
      if (s < legs.size()) {
        const double dur = legs[s] / cfg.walking_speed_mps;
        timeline.push_back({t, t + dur, true, stops[s], stops[s + 1]});
        t += dur;
      }
    }

    GroundTruthDay truth;
    truth.user_id = user;
    truth.date = date;
    truth.weekend = weekend;
    truth.planned_distance_m = travel_total;
    truth.places_visited = 0;
    for (double d : dwell_by_place) {
      if (d > 0.0) {
        ++truth.places_visited;
        const double p = d / dwell_total;
        truth.planned_entropy -= p * std::log(p);
      }
    }
    truth.planned_entropy = std::max(0.0, truth.planned_entropy);
    truth.stress_mean = base + cfg.signal.entropy_coef * truth.planned_entropy +
                        cfg.signal.weekend_coef * (weekend ? 1.0 : 0.0) +
                        cfg.signal.distance_coef * travel_total / 1000.0;

    const std::int64_t origin =
        local_midnight(date, cfg.utc_offset_hours) + std::int64_t{cfg.day_start_hour} * 3600;
    for (int k = 0;; ++k) {
      double ft = static_cast<double>(k) * cfg.fix_interval_s;
      if (ft >= window) break;
      ft += rng.uniform(-cfg.fix_jitter_s, cfg.fix_jitter_s);
      ft = std::clamp(ft, 0.0, window - 1.0);
      const auto seg = std::find_if(timeline.begin(), timeline.end(),
                                    [&](const Segment& s) { return ft < s.t1; });
      const Segment& s = seg == timeline.end() ? timeline.back() : *seg;
      GeoPoint pos;
      if (s.travel) {
        const double a = s.t1 > s.t0 ? (ft - s.t0) / (s.t1 - s.t0) : 0.0;
        const GeoPoint& from = places[s.from].center;
        const GeoPoint& to = places[s.to].center;
        pos = {0, from.lat + a * (to.lat - from.lat), from.lon + a * (to.lon - from.lon)};
        // keep the noise draw count independent of the segment type
        rng.normal();
        rng.normal();
      } else {
        const Place& place = places[s.from];
        const double sigma = place.radius_m * cfg.gps_noise_scale;
        const double east = sigma * rng.normal();
        const double north = sigma * rng.normal();
        pos = sigma > 0.0 ? offset_point(place.center, east, north) : place.center;
      }
      pos.timestamp = origin + static_cast<std::int64_t>(std::floor(ft));
      fixes.push_back(pos);
    }

    if (rng.bernoulli(cfg.response_day_prob)) {
      const int count = 1 + (rng.bernoulli(cfg.second_response_prob) ? 1 : 0);
      for (int r = 0; r < count; ++r) {
        const auto when = origin + static_cast<std::int64_t>(rng.uniform(0.0, window - 1.0));
        const double latent = truth.stress_mean + cfg.noise * rng.normal();
        const int level = static_cast<int>(std::clamp(std::round(latent), 1.0, 5.0));
        out.ema.push_back({user, when, level});
      }
      truth.responses = count;
    }
    out.truth.push_back(truth);
  }
}

}  // namespace

Cohort generate(const CohortConfig& cfg) {
  cfg.validate();
  Cohort cohort;
  for (int u = 0; u < cfg.n_users; ++u) generate_user(cfg, u, cohort);
  return cohort;
}

}  // namespace mobistress
