#pragma once

// Slow, obviously-correct reference computations used as test oracles.
// Nothing here calls into the code it is checking, except haversine_m where
// the thing under test is a partition rule rather than a distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "mobistress/geo_trace.hpp"
#include "mobistress/rng.hpp"

namespace oracle {

using mobistress::GeoPoint;
using mobistress::PlanarPoint;

inline constexpr double kPi = 3.14159265358979323846;

// Spherical law of cosines; a different route to the great-circle distance.
inline double cosine_law_m(const GeoPoint& a, const GeoPoint& b) {
  const double p1 = a.lat * kPi / 180, p2 = b.lat * kPi / 180;
  const double dl = (b.lon - a.lon) * kPi / 180;
  double c = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
  c = std::clamp(c, -1.0, 1.0);
  return 6'371'000.0 * std::acos(c);
}

inline double sq_dist(const PlanarPoint& a, const PlanarPoint& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double max_pair_sq(const std::vector<PlanarPoint>& pts) {
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, sq_dist(pts[i], pts[j]));
  return best;
}

inline double max_pair_haversine(const std::vector<GeoPoint>& pts) {
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, mobistress::haversine_m(pts[i], pts[j]));
  return best;
}

inline double two_pass_std(const std::vector<double>& v) {
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

// Gift wrapping (Jarvis march); independent of the monotone chain.
inline std::vector<PlanarPoint> jarvis_hull(const std::vector<PlanarPoint>& pts) {
  std::vector<PlanarPoint> hull;
  if (pts.size() < 3) return hull;
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x < pts[start].x || (pts[i].x == pts[start].x && pts[i].y < pts[start].y)) start = i;
  }
  std::size_t cur = start;
  do {
    hull.push_back(pts[cur]);
    std::size_t next = (cur + 1) % pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double c = (pts[next].x - pts[cur].x) * (pts[i].y - pts[cur].y) -
                       (pts[next].y - pts[cur].y) * (pts[i].x - pts[cur].x);
      if (c < 0 || (c == 0 && sq_dist(pts[cur], pts[i]) > sq_dist(pts[cur], pts[next]))) next = i;
    }
    cur = next;
  } while (cur != start && hull.size() <= pts.size());
  return hull;
}

inline bool inside_ccw(const std::vector<PlanarPoint>& hull, double x, double y) {
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const PlanarPoint& a = hull[i];
    const PlanarPoint& b = hull[(i + 1) % hull.size()];
    if ((b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) < 0) return false;
  }
  return true;
}

inline double monte_carlo_hull_area(const std::vector<PlanarPoint>& pts, std::size_t samples,
                                    std::uint64_t seed) {
  const std::vector<PlanarPoint> hull = jarvis_hull(pts);
  double x0 = pts[0].x, x1 = x0, y0 = pts[0].y, y1 = y0;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  mobistress::Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    if (inside_ccw(hull, rng.uniform(x0, x1), rng.uniform(y0, y1))) ++hits;
  }
  return (x1 - x0) * (y1 - y0) * static_cast<double>(hits) / static_cast<double>(samples);
}

// Classic Levenshtein recurrence with memoization; no run collapsing.
template <typename T>
std::size_t levenshtein(const std::vector<T>& a, const std::vector<T>& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
    if (i == 0) return j;
    if (j == 0) return i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::size_t r = std::min({go(i - 1, j) + 1, go(i, j - 1) + 1,
                                    go(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0u : 1u)});
    memo[key] = r;
    return r;
  };
  return go(a.size(), b.size());
}

template <typename T>
std::vector<T> dedupe_runs(const std::vector<T>& v) {
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i == 0 || !(v[i] == v[i - 1])) out.push_back(v[i]);
  return out;
}

// Density-reachability by definition: core-core edges define components,
// components are numbered by their smallest core index, border points take
// the smallest label among the cores that reach them.
inline std::vector<int> dbscan(const std::vector<GeoPoint>& pts, double eps, int min_pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<bool>> near(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) near[i][j] = mobistress::haversine_m(pts[i], pts[j]) <= eps;
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i)
    core[i] = std::count(near[i].begin(), near[i].end(), true) >= min_pts;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (core[i] && core[j] && near[i][j]) parent[find(i)] = find(j);

  std::map<std::size_t, int> label_of_root;
  std::vector<int> labels(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    auto [it, fresh] = label_of_root.try_emplace(find(i), static_cast<int>(label_of_root.size()));
    labels[i] = it->second;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (core[j] && near[i][j] && (labels[i] == -1 || labels[j] < labels[i])) labels[i] = labels[j];
    }
  }
  return labels;
}

// Random fixes within roughly `spread_m` of a point near Hanover, NH.
inline std::vector<GeoPoint> random_fixes(mobistress::Rng& rng, std::size_t n, double spread_m,
                                          double lat0 = 43.7, double lon0 = -72.29) {
  std::vector<GeoPoint> pts;
  const double dlat = spread_m / 111'195.0;
  const double dlon = dlat / std::cos(lat0 * kPi / 180);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({static_cast<std::int64_t>(i) * 60, lat0 + rng.uniform(-dlat, dlat),
                   lon0 + rng.uniform(-dlon, dlon)});
  }
  return pts;
}

}  // namespace oracle
