#include "mobistress/clustering.hpp"

#include <algorithm>
#include <deque>

#include "mobistress/error.hpp"
#include "mobistress/kernels.hpp"

namespace mobistress {

namespace {

constexpr int kUnvisited = -2;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

double median_of(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

int ClusterModel::label_of(std::int64_t timestamp) const {
  const std::int64_t bin = floor_div(timestamp, bin_seconds);
  auto it = std::lower_bound(bins.begin(), bins.end(), bin);
  if (it == bins.end() || *it != bin) return kNoise;
  return labels[static_cast<std::size_t>(it - bins.begin())];
}

std::vector<int> dbscan(std::span<const GeoPoint> points, double eps_m, int min_pts) {
  const kernels::NeighborLists neighbors = kernels::region_queries(points, eps_m);
  const std::size_t n = points.size();
  std::vector<int> labels(n, kUnvisited);
  auto is_core = [&](std::size_t i) {
    return neighbors[i].size() >= static_cast<std::size_t>(min_pts);
  };

  int cluster = 0;
  std::deque<std::uint32_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != kUnvisited) continue;
    if (!is_core(i)) {
      labels[i] = kNoise;
      continue;
    }
    labels[i] = cluster;
    frontier.assign(neighbors[i].begin(), neighbors[i].end());
    while (!frontier.empty()) {
      const std::uint32_t q = frontier.front();
      frontier.pop_front();
      if (labels[q] == kNoise) labels[q] = cluster;  // border point
      if (labels[q] != kUnvisited) continue;
      labels[q] = cluster;
      if (is_core(q)) frontier.insert(frontier.end(), neighbors[q].begin(), neighbors[q].end());
    }
    ++cluster;
  }
  return labels;
}

std::vector<std::pair<std::int64_t, GeoPoint>> thin_by_time(std::span<const GeoPoint> points,
                                                           int bin_minutes) {
  const std::int64_t bin_seconds = static_cast<std::int64_t>(bin_minutes) * 60;
  std::vector<std::pair<std::int64_t, GeoPoint>> keyed;
  keyed.reserve(points.size());
  for (const GeoPoint& p : points) keyed.emplace_back(floor_div(p.timestamp, bin_seconds), p);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::pair<std::int64_t, GeoPoint>> reps;
  std::vector<double> lats, lons;
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    lats.clear();
    lons.clear();
    while (j < keyed.size() && keyed[j].first == keyed[i].first) {
      lats.push_back(keyed[j].second.lat);
      lons.push_back(keyed[j].second.lon);
      ++j;
    }
    const std::int64_t bin = keyed[i].first;
    reps.emplace_back(bin, GeoPoint{bin * bin_seconds, median_of(lats), median_of(lons)});
    i = j;
  }
  return reps;
}

ClusterModel cluster_user(std::string_view user_id, std::span<const GeoPoint> points, double eps_m,
                          int min_pts, int bin_minutes) {
  if (!(eps_m > 0.0) || min_pts < 1 || bin_minutes < 1) {
    throw Error(ErrorKind::ConfigInvalid, "clustering needs eps_m > 0, min_pts >= 1, bin_minutes >= 1");
  }
  ClusterModel model;
  model.user_id = std::string(user_id);
  model.eps_m = eps_m;
  model.min_pts = min_pts;
  model.bin_seconds = static_cast<std::int64_t>(bin_minutes) * 60;

  const auto reps = thin_by_time(points, bin_minutes);
  model.bins.reserve(reps.size());
  model.representatives.reserve(reps.size());
  for (const auto& [bin, point] : reps) {
    model.bins.push_back(bin);
    model.representatives.push_back(point);
  }
  model.labels = dbscan(model.representatives, eps_m, min_pts);
  for (int label : model.labels) model.cluster_count = std::max(model.cluster_count, label + 1);
  return model;
}

}  // namespace mobistress
