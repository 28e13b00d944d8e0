#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mobistress/date.hpp"

namespace mobistress {

inline constexpr double kEarthRadiusM = 6'371'000.0;

struct GeoPoint {
  std::int64_t timestamp = 0;  // epoch seconds
  double lat = 0.0;            // degrees
  double lon = 0.0;            // degrees

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p);

/// Meters east (x) and north (y) of a projection anchor.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

struct DayTrace {
  std::string user_id;
  Date date;
  std::vector<GeoPoint> points;  // strictly increasing timestamps, non-empty
};

/// Great-circle distance on a sphere of radius kEarthRadiusM.
double haversine_m(const GeoPoint& a, const GeoPoint& b);

/// Equirectangular projection about `anchor`. Throws Error(DomainTooWide)
/// when the point is a degree or more away from the anchor on either axis.
PlanarPoint project_local(const GeoPoint& p, const GeoPoint& anchor);

/// Inverse of project_local; the timestamp is copied from the anchor.
GeoPoint unproject_local(const PlanarPoint& q, const GeoPoint& anchor);

/// Mean latitude/longitude of a non-empty set of points.
GeoPoint mean_location(std::span<const GeoPoint> points);

/// Sorts by (timestamp, lat, lon), keeps the first fix of each timestamp and
/// groups by local calendar date. Output is sorted by date.
std::vector<DayTrace> split_days(std::string_view user_id, std::span<const GeoPoint> user_points,
                                 int utc_offset_hours);

}  // namespace mobistress
