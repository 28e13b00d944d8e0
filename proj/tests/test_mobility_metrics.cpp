#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "mobistress/error.hpp"
#include "mobistress/mobility_metrics.hpp"
#include "oracles.hpp"

using namespace mobistress;
using std::chrono::year;

namespace {

DayTrace day_of(std::vector<GeoPoint> pts) { return {"u", Date{}, std::move(pts)}; }

GeoPoint offset_m(const GeoPoint& base, double east, double north, std::int64_t ts) {
  const double lat = base.lat + north / 6'371'000.0 * 180 / oracle::kPi;
  const double lon = base.lon + east / (6'371'000.0 * std::cos(base.lat * oracle::kPi / 180)) * 180 / oracle::kPi;
  return {ts, lat, lon};
}

double entropy_of(std::initializer_list<double> counts) {
  double total = 0, h = 0;
  for (double c : counts) total += c;
  for (double c : counts) h -= c / total * std::log(c / total);
  return h;
}

}  // namespace

TEST(TotalDistance, Examples) {
  const GeoPoint a{0, 43.70, -72.3};
  EXPECT_EQ(total_distance(day_of({a})), 0.0);
  // Equal steps along a meridian.
  const GeoPoint b{60, 43.71, -72.3}, c{120, 43.72, -72.3};
  EXPECT_NEAR(total_distance(day_of({a, b, c})), 2 * haversine_m(a, b), 1e-6);
}

TEST(TotalDistance, EqualsConsecutiveSum) {
  Rng rng(41);
  const auto pts = oracle::random_fixes(rng, 50, 3000);
  double want = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) want += haversine_m(pts[i], pts[i + 1]);
  EXPECT_EQ(total_distance(day_of(pts)), want);
  EXPECT_LE(max_displacement(day_of(pts)), total_distance(day_of(pts)));
}

TEST(DistanceStddev, Examples) {
  const GeoPoint a{0, 43.7, -72.3};
  EXPECT_EQ(distance_stddev(day_of({a})), 0.0);
  EXPECT_EQ(distance_stddev(day_of({a, {1, a.lat, a.lon}, {2, a.lat, a.lon}})), 0.0);
}

TEST(DistanceStddev, MatchesTwoPassOracle) {
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const auto pts = oracle::random_fixes(rng, 30, 2500);
    double lat = 0, lon = 0;
    for (const auto& p : pts) {
      lat += p.lat;
      lon += p.lon;
    }
    const GeoPoint centroid{0, lat / 30, lon / 30};
    std::vector<double> d;
    for (const auto& p : pts) d.push_back(oracle::cosine_law_m(p, centroid));
    const double want = oracle::two_pass_std(d);
    EXPECT_NEAR(distance_stddev(day_of(pts)), want, 1e-6 * want);
  }
}

TEST(Tiles, OneTileAndRevisits) {
  const GeoPoint anchor{0, 43.7, -72.3};
  const auto inside = tile_sequence(
      day_of({offset_m(anchor, 10, 10, 0), offset_m(anchor, 200, 300, 1), offset_m(anchor, 499, 1, 2)}), 500, anchor);
  EXPECT_EQ(inside.collapsed.size(), 1u);
  EXPECT_EQ(inside.distinct, 1u);

  const auto trip = tile_sequence(
      day_of({offset_m(anchor, 100, 100, 0), offset_m(anchor, 700, 100, 1), offset_m(anchor, 120, 90, 2)}), 500, anchor);
  ASSERT_EQ(trip.collapsed.size(), 3u);
  EXPECT_EQ(trip.collapsed[0], trip.collapsed[2]);
  EXPECT_NE(trip.collapsed[0], trip.collapsed[1]);
  EXPECT_EQ(trip.distinct, 2u);
  EXPECT_THROW(tile_sequence(day_of({anchor}), 0, anchor), Error);
}

TEST(Tiles, DistinctCountMatchesSetOfFloors) {
  Rng rng(43);
  const GeoPoint anchor{0, 43.7, -72.3};
  for (int t = 0; t < 20; ++t) {
    std::vector<GeoPoint> walk;
    double x = 0, y = 0;
    for (int i = 0; i < 300; ++i) {
      x += rng.normal() * 150;
      y += rng.normal() * 150;
      walk.push_back(offset_m(anchor, x, y, i));
    }
    std::set<std::pair<long long, long long>> floors;
    const double m_per_deg = 6'371'000.0 * oracle::kPi / 180;
    for (const auto& p : walk) {
      const double px = (p.lon - anchor.lon) * std::cos(anchor.lat * oracle::kPi / 180) * m_per_deg;
      const double py = (p.lat - anchor.lat) * m_per_deg;
      floors.emplace(static_cast<long long>(std::floor(px / 500)), static_cast<long long>(std::floor(py / 500)));
    }
    EXPECT_EQ(tile_sequence(day_of(walk), 500, anchor).distinct, floors.size());
  }
}

TEST(DistanceEntropy, UniformOverFourClustersIsLn4) {
  ClusterModel model;
  model.bin_seconds = 600;
  model.cluster_count = 4;
  std::vector<GeoPoint> pts;
  for (int i = 0; i < 9; ++i) {
    model.bins.push_back(i);
    model.labels.push_back(std::min(i / 2, 3));
    pts.push_back({i * 600, 43.7, -72.3});
  }
  // Intervals start at fixes 0..7: two per cluster.
  EXPECT_NEAR(distance_entropy(day_of(pts), model), std::log(4.0), 1e-12);
}

TEST(DistanceEntropy, OneClusterOrOneFixIsZero) {
  ClusterModel model;
  model.bin_seconds = 600;
  model.cluster_count = 1;
  model.bins = {0, 1, 2};
  model.labels = {0, 0, 0};
  EXPECT_EQ(distance_entropy(day_of({{0, 1, 1}, {600, 1, 1}, {1200, 1, 1}}), model), 0.0);
  EXPECT_EQ(distance_entropy(day_of({{0, 1, 1}}), model), 0.0);
}

TEST(DistanceEntropy, TallyOfUnevenIntervalsWithNoise) {
  ClusterModel model;
  model.bin_seconds = 60;
  model.cluster_count = 2;
  // Fix at t lands in bin t/60.
  model.bins = {0, 1, 5, 10, 12};
  model.labels = {0, 0, 1, kNoise, 0};
  const std::vector<GeoPoint> pts{{0, 1, 1}, {60, 1, 1}, {300, 1, 1}, {600, 1, 1}, {720, 1, 1}, {900, 1, 1}};
  // cluster 0: 60 + 240 + 180, cluster 1: 300, noise: 120.
  const double h = distance_entropy(day_of(pts), model);
  EXPECT_NEAR(h, entropy_of({480, 300, 120}), 1e-12);
  EXPECT_LE(h, std::log(3.0));
}

TEST(DayFeatures, ThreeDayItineraryHandTrace) {
  const int tz = -4;
  const GeoPoint A{0, 43.70, -72.29};
  const Date d1{year{2013} / 4 / 1}, d2{year{2013} / 4 / 2}, d4{year{2013} / 4 / 4};
  auto stay = [&](std::vector<GeoPoint>& out, Date d, double east, double north, int first_slot, int count) {
    const std::int64_t t0 = local_midnight(d, tz) + 8 * 3600;
    for (int s = first_slot; s < first_slot + count; ++s) out.push_back(offset_m(A, east, north, t0 + s * 600));
  };
  // Places: A at the origin, B 1500 m north, C 1500 m east.
  std::vector<GeoPoint> p1, p2, p4;
  stay(p1, d1, 0, 0, 0, 6);
  stay(p1, d1, 0, 1500, 6, 6);
  stay(p1, d1, 0, 0, 12, 6);
  stay(p2, d2, 0, 0, 0, 6);
  stay(p2, d2, 1500, 0, 6, 6);
  stay(p4, d4, 0, 0, 0, 6);
  stay(p4, d4, 0, 1500, 6, 6);
  stay(p4, d4, 1500, 0, 12, 6);
  const std::vector<DayTrace> days{{"u", d1, p1}, {"u", d2, p2}, {"u", d4, p4}};

  std::vector<GeoPoint> all;
  for (const auto& d : days) all.insert(all.end(), d.points.begin(), d.points.end());
  const ClusterModel model = cluster_user("u", all, 300, 5, 10);
  ASSERT_EQ(model.cluster_count, 3);

  const auto features = compute_day_features(days, model, MetricConfig{});
  ASSERT_EQ(features.size(), 3u);

  const GeoPoint B = offset_m(A, 0, 1500, 0), C = offset_m(A, 1500, 0, 0);
  const double ab = oracle::cosine_law_m(A, B), ac = oracle::cosine_law_m(A, C), bc = oracle::cosine_law_m(B, C);

  // Projection anchor: 24 fixes at A, 12 at B, 12 at C.
  const GeoPoint anchor{0, (24 * A.lat + 12 * B.lat + 12 * C.lat) / 48, (24 * A.lon + 12 * B.lon + 12 * C.lon) / 48};
  const double m_per_deg = 6'371'000.0 * oracle::kPi / 180;
  auto tile = [&](const GeoPoint& p) {
    const double x = (p.lon - anchor.lon) * std::cos(anchor.lat * oracle::kPi / 180) * m_per_deg;
    const double y = (p.lat - anchor.lat) * m_per_deg;
    return std::make_pair(std::floor(x / 500), std::floor(y / 500));
  };
  ASSERT_NE(tile(A), tile(B));
  ASSERT_NE(tile(A), tile(C));

  const MobilityVector& v1 = features.at(d1);
  EXPECT_NEAR(v1.total_distance_m, 2 * ab, 1e-3);
  EXPECT_NEAR(v1.max_displacement_m, ab, 1e-3);
  // 12 fixes at distance ab/3 from the centroid, 6 at 2ab/3.
  EXPECT_NEAR(v1.distance_stddev_m, oracle::two_pass_std({ab / 3, ab / 3, 2 * ab / 3}), 0.05);
  EXPECT_EQ(v1.distinct_tiles, 2.0);
  EXPECT_NEAR(v1.hull_area_m2, 0.0, 1e-6);
  EXPECT_FALSE(v1.tile_seq_diff.has_value());
  EXPECT_FALSE(v1.cluster_seq_diff.has_value());
  // 17 intervals: 11 start at A, 6 at B.
  EXPECT_NEAR(v1.distance_entropy_nats, entropy_of({11, 6}), 1e-12);

  const MobilityVector& v2 = features.at(d2);
  EXPECT_NEAR(v2.total_distance_m, ac, 1e-3);
  EXPECT_NEAR(v2.max_displacement_m, ac, 1e-3);
  EXPECT_NEAR(v2.distance_stddev_m, 0.0, 0.05);
  EXPECT_EQ(v2.distinct_tiles, 2.0);
  // [tA, tB, tA] vs [tA, tC]; clusters [0, 1, 0] vs [0, 2].
  ASSERT_TRUE(v2.tile_seq_diff.has_value());
  EXPECT_EQ(*v2.tile_seq_diff, 2.0);
  ASSERT_TRUE(v2.cluster_seq_diff.has_value());
  EXPECT_EQ(*v2.cluster_seq_diff, 2.0);
  EXPECT_NEAR(v2.distance_entropy_nats, entropy_of({6, 5}), 1e-12);

  const MobilityVector& v4 = features.at(d4);
  EXPECT_NEAR(v4.total_distance_m, ab + bc, 1e-3);
  EXPECT_NEAR(v4.max_displacement_m, bc, 1e-3);
  EXPECT_EQ(v4.distinct_tiles, 3.0);
  // Right triangle with 1500 m legs, measured in the anchor's projection.
  EXPECT_NEAR(v4.hull_area_m2, 0.5 * 1500 * 1500, 0.5 * 1500 * 1500 * 1e-3);
  EXPECT_FALSE(v4.tile_seq_diff.has_value());
  EXPECT_FALSE(v4.cluster_seq_diff.has_value());
  EXPECT_NEAR(v4.distance_entropy_nats, entropy_of({6, 6, 5}), 1e-12);
}

TEST(DayFeatures, IdenticalConsecutiveDaysHaveZeroDiffs) {
  const int tz = -4;
  const GeoPoint A{0, 43.70, -72.29};
  std::vector<DayTrace> days;
  std::vector<GeoPoint> all;
  for (int k = 0; k < 2; ++k) {
    const Date d = Date{year{2013} / 4 / 10} + std::chrono::days{k};
    DayTrace day{"u", d, {}};
    const std::int64_t t0 = local_midnight(d, tz) + 9 * 3600;
    for (int s = 0; s < 8; ++s) day.points.push_back(offset_m(A, s < 4 ? 0 : 900, 0, t0 + s * 600));
    all.insert(all.end(), day.points.begin(), day.points.end());
    days.push_back(day);
  }
  const auto f = compute_day_features(days, cluster_user("u", all, 300, 3, 10), MetricConfig{});
  const MobilityVector& second = f.at(days[1].date);
  EXPECT_EQ(second.tile_seq_diff, 0.0);
  EXPECT_EQ(second.cluster_seq_diff, 0.0);
}

TEST(DayFeatures, InvariantsOnRandomDays) {
  Rng rng(44);
  std::vector<DayTrace> days;
  std::vector<GeoPoint> all;
  for (int k = 0; k < 15; ++k) {
    DayTrace day{"u", Date{year{2013} / 4 / 1} + std::chrono::days{k}, {}};
    const std::int64_t t0 = local_midnight(day.date, 0);
    auto fixes = oracle::random_fixes(rng, 2 + rng.index(60), 2000);
    for (std::size_t i = 0; i < fixes.size(); ++i) fixes[i].timestamp = t0 + static_cast<std::int64_t>(i) * 900;
    day.points = fixes;
    all.insert(all.end(), fixes.begin(), fixes.end());
    if (k != 6) days.push_back(day);
  }
  const ClusterModel model = cluster_user("u", all, 300, 4, 10);
  for (const auto& [date, v] : compute_day_features(days, model, MetricConfig{})) {
    for (const auto& x : v.as_array()) {
      if (x) {
        EXPECT_TRUE(std::isfinite(*x));
        EXPECT_GE(*x, 0.0);
      }
    }
    EXPECT_LE(v.max_displacement_m, v.total_distance_m * (1 + 1e-12));
    EXPECT_GE(v.distinct_tiles, 1.0);
    const bool first_or_after_gap = date == days.front().date || date == Date{year{2013} / 4 / 8};
    EXPECT_EQ(v.tile_seq_diff.has_value(), !first_or_after_gap);
    EXPECT_EQ(v.cluster_seq_diff.has_value(), !first_or_after_gap);
  }
  for (const DayTrace& d : days) {
    std::set<int> visited;
    for (const auto& p : d.points) visited.insert(model.label_of(p.timestamp));
    EXPECT_LE(distance_entropy(d, model), std::log(static_cast<double>(visited.size())) + 1e-12);
  }
}

TEST(ExtractFeatures, ParallelEqualsPerUserComputation) {
  Rng rng(45);
  std::map<std::string, std::vector<GeoPoint>> by_user;
  for (int u = 0; u < 6; ++u) {
    auto fixes = oracle::random_fixes(rng, 400, 1500);
    for (auto& p : fixes) p.timestamp = 1'364'788'800 + static_cast<std::int64_t>(rng.index(5 * 86400));
    by_user["user" + std::to_string(u)] = fixes;
  }
  const auto users = extract_features(by_user, -4, MetricConfig{});
  ASSERT_EQ(users.size(), by_user.size());
  for (const UserFeatures& uf : users) {
    const auto days = split_days(uf.user_id, by_user.at(uf.user_id), -4);
    std::vector<GeoPoint> cleaned;
    for (const auto& d : days) cleaned.insert(cleaned.end(), d.points.begin(), d.points.end());
    const auto want = compute_day_features(days, cluster_user(uf.user_id, cleaned, 300, 5, 10), MetricConfig{});
    EXPECT_EQ(uf.days, want);
  }
}
