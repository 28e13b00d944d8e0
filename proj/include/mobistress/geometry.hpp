#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mobistress/geo_trace.hpp"

namespace mobistress::geometry {

double cross(const PlanarPoint& o, const PlanarPoint& a, const PlanarPoint& b);
double squared_distance(const PlanarPoint& a, const PlanarPoint& b);

/// Andrew's monotone chain. Returns indices into `points` of the hull vertices
/// in counter-clockwise order, collinear points dropped. Fewer than three
/// vertices are returned for degenerate inputs.
std::vector<std::size_t> convex_hull(std::span<const PlanarPoint> points);

/// Shoelace area of a simple polygon given by vertex indices.
double polygon_area(std::span<const PlanarPoint> points, std::span<const std::size_t> polygon);

/// Every antipodal vertex pair of a convex polygon (CCW, as produced by
/// convex_hull), found with rotating calipers. Pairs are indices into
/// `points`. The diameter pair is always among them.
std::vector<std::pair<std::size_t, std::size_t>> antipodal_pairs(
    std::span<const PlanarPoint> points, std::span<const std::size_t> hull);

struct Diameter {
  std::size_t first = 0;
  std::size_t second = 0;
  double squared_length = 0.0;
};

/// Farthest pair of points, via hull + rotating calipers.
Diameter diameter(std::span<const PlanarPoint> points);

}  // namespace mobistress::geometry
