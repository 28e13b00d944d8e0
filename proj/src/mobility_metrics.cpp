#include "mobistress/mobility_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>

#include "mobistress/error.hpp"
#include "mobistress/geometry.hpp"
#include "mobistress/sequence.hpp"

namespace mobistress {

std::array<std::optional<double>, kGpsFeatureCount> MobilityVector::as_array() const {
  return {total_distance_m, max_displacement_m, distance_stddev_m, distinct_tiles,
          hull_area_m2,     tile_seq_diff,      cluster_seq_diff,  distance_entropy_nats};
}

MobilityVector MobilityVector::from_array(
    const std::array<std::optional<double>, kGpsFeatureCount>& v) {
  MobilityVector m;
  m.total_distance_m = v[0].value_or(0.0);
  m.max_displacement_m = v[1].value_or(0.0);
  m.distance_stddev_m = v[2].value_or(0.0);
  m.distinct_tiles = v[3].value_or(0.0);
  m.hull_area_m2 = v[4].value_or(0.0);
  m.tile_seq_diff = v[5];
  m.cluster_seq_diff = v[6];
  m.distance_entropy_nats = v[7].value_or(0.0);
  return m;
}

double total_distance(const DayTrace& day) {
  double sum = 0.0;
  for (std::size_t i = 1; i < day.points.size(); ++i) {
    sum += haversine_m(day.points[i - 1], day.points[i]);
  }
  return sum;
}

namespace {

std::vector<PlanarPoint> project_all(std::span<const GeoPoint> points, const GeoPoint& anchor) {
  std::vector<PlanarPoint> out;
  out.reserve(points.size());
  for (const GeoPoint& p : points) out.push_back(project_local(p, anchor));
  return out;
}

double exhaustive_max_distance(std::span<const GeoPoint> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, haversine_m(points[i], points[j]));
    }
  }
  return best;
}

}  // namespace

double max_displacement(const DayTrace& day) {
  const auto& pts = day.points;
  if (pts.size() < 2) return 0.0;
  std::vector<PlanarPoint> planar;
  try {
    planar = project_all(pts, mean_location(pts));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DomainTooWide) throw;
    return exhaustive_max_distance(pts);
  }
  const std::vector<std::size_t> hull = geometry::convex_hull(planar);
  double best = 0.0;
  for (const auto& [a, b] : geometry::antipodal_pairs(planar, hull)) {
    best = std::max(best, haversine_m(pts[a], pts[b]));
  }
  return best;
}

double distance_stddev(const DayTrace& day) {
  const auto& pts = day.points;
  if (pts.size() < 2) return 0.0;
  const GeoPoint centroid = mean_location(pts);
  // Welford's running variance
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (const GeoPoint& p : pts) {
    const double d = haversine_m(p, centroid);
    ++n;
    const double delta = d - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (d - mean);
  }
  return std::sqrt(std::max(0.0, m2 / static_cast<double>(n)));
}

TileId tile_of(const PlanarPoint& q, double tile_size_m) {
  return {static_cast<long long>(std::floor(q.x / tile_size_m)),
          static_cast<long long>(std::floor(q.y / tile_size_m))};
}

TileSequence tile_sequence(const DayTrace& day, double tile_size_m, const GeoPoint& anchor) {
  if (!(tile_size_m > 0.0)) throw Error(ErrorKind::ConfigInvalid, "tile size must be positive");
  std::vector<TileId> tiles;
  tiles.reserve(day.points.size());
  for (const GeoPoint& p : day.points) tiles.push_back(tile_of(project_local(p, anchor), tile_size_m));
  TileSequence out;
  out.distinct = std::set<TileId>(tiles.begin(), tiles.end()).size();
  out.collapsed = collapse_runs(std::span<const TileId>(tiles));
  return out;
}

double convex_hull_area(const DayTrace& day, const GeoPoint& anchor) {
  const std::vector<PlanarPoint> planar = project_all(day.points, anchor);
  const std::vector<std::size_t> hull = geometry::convex_hull(planar);
  return geometry::polygon_area(planar, hull);
}

std::vector<int> cluster_sequence(const DayTrace& day, const ClusterModel& model) {
  std::vector<int> seq;
  seq.reserve(day.points.size());
  for (const GeoPoint& p : day.points) seq.push_back(model.label_of(p.timestamp));
  return collapse_runs(std::span<const int>(seq));
}

double distance_entropy(const DayTrace& day, const ClusterModel& model) {
  const auto& pts = day.points;
  if (pts.size() < 2) return 0.0;
  // Slot 0 is the pooled noise bucket, slot c + 1 is cluster c.
  std::vector<double> dwell(static_cast<std::size_t>(model.cluster_count) + 1, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dt = static_cast<double>(pts[i + 1].timestamp - pts[i].timestamp);
    dwell[static_cast<std::size_t>(model.label_of(pts[i].timestamp) + 1)] += dt;
    total += dt;
  }
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double t : dwell) {
    if (t > 0.0) {
      const double p = t / total;
      h -= p * std::log(p);
    }
  }
  return std::max(0.0, h);
}

std::map<Date, MobilityVector> compute_day_features(std::span<const DayTrace> user_days,
                                                    const ClusterModel& model,
                                                    const MetricConfig& cfg) {
  std::map<Date, MobilityVector> out;
  if (user_days.empty()) return out;

  std::vector<GeoPoint> all;
  for (const DayTrace& d : user_days) all.insert(all.end(), d.points.begin(), d.points.end());
  const GeoPoint user_anchor = mean_location(all);

  std::map<Date, std::vector<TileId>> tile_seqs;
  std::map<Date, std::vector<int>> cluster_seqs;
  for (const DayTrace& day : user_days) {
    MobilityVector v;
    v.total_distance_m = total_distance(day);
    v.max_displacement_m = max_displacement(day);
    v.distance_stddev_m = distance_stddev(day);

    TileSequence tiles;
    try {
      tiles = tile_sequence(day, cfg.tile_size_m, user_anchor);
      v.hull_area_m2 = convex_hull_area(day, user_anchor);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DomainTooWide) throw;
      const GeoPoint day_anchor = mean_location(day.points);
      tiles = tile_sequence(day, cfg.tile_size_m, day_anchor);
      v.hull_area_m2 = convex_hull_area(day, day_anchor);
    }
    v.distinct_tiles = static_cast<double>(tiles.distinct);

    std::vector<int> clusters = cluster_sequence(day, model);
    v.distance_entropy_nats = distance_entropy(day, model);

    const Date previous = day.date - std::chrono::days{1};
    if (auto it = tile_seqs.find(previous); it != tile_seqs.end()) {
      v.tile_seq_diff = static_cast<double>(edit_distance(it->second, tiles.collapsed));
    }
    if (auto it = cluster_seqs.find(previous); it != cluster_seqs.end()) {
      v.cluster_seq_diff = static_cast<double>(edit_distance(it->second, clusters));
    }
    tile_seqs[day.date] = std::move(tiles.collapsed);
    cluster_seqs[day.date] = std::move(clusters);
    out[day.date] = v;
  }
  return out;
}

std::vector<UserFeatures> extract_features(
    const std::map<std::string, std::vector<GeoPoint>>& points_by_user, int utc_offset_hours,
    const MetricConfig& cfg) {
  std::vector<const std::pair<const std::string, std::vector<GeoPoint>>*> users;
  for (const auto& entry : points_by_user) users.push_back(&entry);
  std::vector<UserFeatures> out(users.size());
  std::vector<std::exception_ptr> errors(users.size());

  const auto n = static_cast<std::ptrdiff_t>(users.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    const auto idx = static_cast<std::size_t>(u);
    try {
      const auto& [user_id, points] = *users[idx];
      const std::vector<DayTrace> days = split_days(user_id, points, utc_offset_hours);
      std::vector<GeoPoint> cleaned;
      for (const DayTrace& d : days) cleaned.insert(cleaned.end(), d.points.begin(), d.points.end());
      const ClusterModel model =
          cluster_user(user_id, cleaned, cfg.eps_m, cfg.min_pts, cfg.bin_minutes);
      out[idx] = {user_id, compute_day_features(days, model, cfg)};
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace mobistress
