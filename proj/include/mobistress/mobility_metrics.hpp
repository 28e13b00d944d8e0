#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobistress/clustering.hpp"
#include "mobistress/geo_trace.hpp"

namespace mobistress {

struct TileId {
  long long ix = 0;
  long long iy = 0;

  friend auto operator<=>(const TileId&, const TileId&) = default;
};

struct TileSequence {
  std::vector<TileId> collapsed;  // consecutive duplicates removed
  std::size_t distinct = 0;       // distinct tiles over all fixes
};

inline constexpr std::size_t kGpsFeatureCount = 8;

/// The eight per-day GPS metrics, in serialization order.
struct MobilityVector {
  double total_distance_m = 0.0;
  double max_displacement_m = 0.0;
  double distance_stddev_m = 0.0;
  double distinct_tiles = 0.0;
  double hull_area_m2 = 0.0;
  std::optional<double> tile_seq_diff;     // empty when the previous calendar day is absent
  std::optional<double> cluster_seq_diff;  // same
  double distance_entropy_nats = 0.0;

  std::array<std::optional<double>, kGpsFeatureCount> as_array() const;
  static MobilityVector from_array(const std::array<std::optional<double>, kGpsFeatureCount>& v);

  friend bool operator==(const MobilityVector&, const MobilityVector&) = default;
};

struct MetricConfig {
  double tile_size_m = 500.0;
  double eps_m = 300.0;
  int min_pts = 5;
  int bin_minutes = 10;
};

double total_distance(const DayTrace& day);

/// Largest haversine distance between two fixes of the day. Candidate pairs
/// come from rotating calipers over the hull of the day projected about its
/// own centroid; each antipodal pair is re-measured on the sphere.
double max_displacement(const DayTrace& day);

/// Population standard deviation of fix distances to the day centroid.
double distance_stddev(const DayTrace& day);

TileId tile_of(const PlanarPoint& q, double tile_size_m);
TileSequence tile_sequence(const DayTrace& day, double tile_size_m, const GeoPoint& anchor);

double convex_hull_area(const DayTrace& day, const GeoPoint& anchor);

/// Cluster label per fix, run-collapsed. Noise appears as kNoise.
std::vector<int> cluster_sequence(const DayTrace& day, const ClusterModel& model);

/// Entropy of the day's dwell time over clusters. Each inter-fix interval
/// counts toward the cluster of its starting fix; noise is one pooled bucket.
double distance_entropy(const DayTrace& day, const ClusterModel& model);

/// All eight metrics for one user's days (sorted by date). Sequence
/// differences compare with the preceding calendar day only.
std::map<Date, MobilityVector> compute_day_features(std::span<const DayTrace> user_days,
                                                    const ClusterModel& model,
                                                    const MetricConfig& cfg);

struct UserFeatures {
  std::string user_id;
  std::map<Date, MobilityVector> days;
};

/// split_days + cluster_user + compute_day_features for every user; users
/// are processed in parallel and returned in user_id order.
std::vector<UserFeatures> extract_features(
    const std::map<std::string, std::vector<GeoPoint>>& points_by_user, int utc_offset_hours,
    const MetricConfig& cfg);

}  // namespace mobistress
