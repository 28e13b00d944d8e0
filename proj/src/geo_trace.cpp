#include "mobistress/geo_trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mobistress/error.hpp"

namespace mobistress {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

bool is_valid(const GeoPoint& p) {
  return p.timestamp >= 0 && std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double sdphi = std::sin((phi2 - phi1) * 0.5);
  const double sdlam = std::sin((b.lon - a.lon) * kDegToRad * 0.5);
  double h = sdphi * sdphi + std::cos(phi1) * std::cos(phi2) * sdlam * sdlam;
  h = std::min(1.0, h);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

PlanarPoint project_local(const GeoPoint& p, const GeoPoint& anchor) {
  const double dlat = p.lat - anchor.lat;
  const double dlon = p.lon - anchor.lon;
  if (!(std::abs(dlat) < 1.0) || !(std::abs(dlon) < 1.0)) {
    std::ostringstream msg;
    msg << "point (" << p.lat << ", " << p.lon << ") is too far from anchor (" << anchor.lat
        << ", " << anchor.lon << ") for a local projection";
    throw Error(ErrorKind::DomainTooWide, msg.str());
  }
  const double meters_per_degree = kEarthRadiusM * kDegToRad;
  return {dlon * std::cos(anchor.lat * kDegToRad) * meters_per_degree, dlat * meters_per_degree};
}

GeoPoint unproject_local(const PlanarPoint& q, const GeoPoint& anchor) {
  const double meters_per_degree = kEarthRadiusM * kDegToRad;
  return {anchor.timestamp, anchor.lat + q.y / meters_per_degree,
          anchor.lon + q.x / (std::cos(anchor.lat * kDegToRad) * meters_per_degree)};
}

GeoPoint mean_location(std::span<const GeoPoint> points) {
  double lat = 0.0, lon = 0.0;
  for (const GeoPoint& p : points) {
    lat += p.lat;
    lon += p.lon;
  }
  const double n = static_cast<double>(points.size());
  return {points.empty() ? 0 : points.front().timestamp, lat / n, lon / n};
}

std::vector<DayTrace> split_days(std::string_view user_id, std::span<const GeoPoint> user_points,
                                 int utc_offset_hours) {
  std::vector<GeoPoint> sorted(user_points.begin(), user_points.end());
  std::sort(sorted.begin(), sorted.end(), [](const GeoPoint& a, const GeoPoint& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    if (a.lat != b.lat) return a.lat < b.lat;
    return a.lon < b.lon;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const GeoPoint& a, const GeoPoint& b) {
                             return a.timestamp == b.timestamp;
                           }),
               sorted.end());

  std::vector<DayTrace> days;
  for (const GeoPoint& p : sorted) {
    const Date d = local_date(p.timestamp, utc_offset_hours);
    if (days.empty() || days.back().date != d) {
      days.push_back({std::string(user_id), d, {}});
    }
    days.back().points.push_back(p);
  }
  return days;
}

}  // namespace mobistress
