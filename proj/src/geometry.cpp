#include "mobistress/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace mobistress::geometry {

double cross(const PlanarPoint& o, const PlanarPoint& a, const PlanarPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double squared_distance(const PlanarPoint& a, const PlanarPoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::vector<std::size_t> convex_hull(std::span<const PlanarPoint> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    return points[a].y < points[b].y;
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
              order.end());
  if (order.size() < 3) return order;

  std::vector<std::size_t> hull(2 * order.size());
  std::size_t k = 0;
  // lower chain
  for (std::size_t idx : order) {
    while (k >= 2 && cross(points[hull[k - 2]], points[hull[k - 1]], points[idx]) <= 0.0) --k;
    hull[k++] = idx;
  }
  // upper chain
  const std::size_t lower = k + 1;
  for (std::size_t r = order.size() - 1; r-- > 0;) {
    const std::size_t idx = order[r];
    while (k >= lower && cross(points[hull[k - 2]], points[hull[k - 1]], points[idx]) <= 0.0) --k;
    hull[k++] = idx;
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

double polygon_area(std::span<const PlanarPoint> points, std::span<const std::size_t> polygon) {
  if (polygon.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const PlanarPoint& a = points[polygon[i]];
    const PlanarPoint& b = points[polygon[(i + 1) % polygon.size()]];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) * 0.5;
}

std::vector<std::pair<std::size_t, std::size_t>> antipodal_pairs(
    std::span<const PlanarPoint> points, std::span<const std::size_t> hull) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t h = hull.size();
  if (h == 0) return pairs;
  if (h == 1) {
    pairs.emplace_back(hull[0], hull[0]);
    return pairs;
  }
  if (h == 2) {
    pairs.emplace_back(hull[0], hull[1]);
    return pairs;
  }
  auto at = [&](std::size_t i) -> const PlanarPoint& { return points[hull[i % h]]; };
  std::size_t j = 1;
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t ni = (i + 1) % h;
    // Advance the caliper while the triangle on edge (i, ni) keeps growing.
    for (std::size_t guard = 0; guard < h; ++guard) {
      if (cross(at(i), at(ni), at(j + 1)) > cross(at(i), at(ni), at(j))) {
        j = (j + 1) % h;
      } else {
        break;
      }
    }
    const std::size_t nj = (j + 1) % h;
    pairs.emplace_back(hull[i], hull[j]);
    pairs.emplace_back(hull[ni], hull[j]);
    // Parallel edges leave a second antipodal vertex one step ahead.
    pairs.emplace_back(hull[i], hull[nj]);
    pairs.emplace_back(hull[ni], hull[nj]);
  }
  return pairs;
}

Diameter diameter(std::span<const PlanarPoint> points) {
  Diameter best;
  if (points.empty()) return best;
  const std::vector<std::size_t> hull = convex_hull(points);
  for (const auto& [a, b] : antipodal_pairs(points, hull)) {
    const double d2 = squared_distance(points[a], points[b]);
    if (d2 > best.squared_length) best = {a, b, d2};
  }
  if (hull.size() == 1) best = {hull[0], hull[0], 0.0};
  return best;
}

}  // namespace mobistress::geometry
