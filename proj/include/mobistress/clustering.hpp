#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mobistress/geo_trace.hpp"

namespace mobistress {

inline constexpr int kNoise = -1;

/// Stay regions of one user over the whole term.
///
/// Raw fixes are thinned to one representative per time bin; DBSCAN runs on
/// the representatives. A fix is labeled by the representative of its bin.
struct ClusterModel {
  std::string user_id;
  double eps_m = 0.0;
  int min_pts = 1;
  std::int64_t bin_seconds = 600;
  std::vector<std::int64_t> bins;         // sorted bin indices
  std::vector<GeoPoint> representatives;  // one per bin
  std::vector<int> labels;                // cluster per representative, or kNoise
  int cluster_count = 0;

  /// Cluster of the fix recorded at `timestamp`; kNoise for unknown bins.
  int label_of(std::int64_t timestamp) const;
};

/// DBSCAN over `points` with haversine neighborhoods (a point is its own
/// neighbor). Clusters are numbered in order of their lowest-index core
/// point; a border point joins the lowest-numbered cluster that reaches it.
std::vector<int> dbscan(std::span<const GeoPoint> points, double eps_m, int min_pts);

/// Median lat/lon per `bin_minutes` window, ordered by bin.
std::vector<std::pair<std::int64_t, GeoPoint>> thin_by_time(std::span<const GeoPoint> points,
                                                           int bin_minutes);

ClusterModel cluster_user(std::string_view user_id, std::span<const GeoPoint> points, double eps_m,
                          int min_pts, int bin_minutes);

}  // namespace mobistress
