#include "mobistress/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mobistress::kernels {

namespace {

inline void gemm_nt_row(MatrixView x, MatrixView w, MutableMatrixView y, std::size_t i) {
  const double* xi = x.data + i * x.cols;
  double* yi = y.data + i * y.cols;
  for (std::size_t j = 0; j < w.rows; ++j) {
    const double* wj = w.data + j * w.cols;
    double acc = 0.0;
    for (std::size_t p = 0; p < x.cols; ++p) acc += xi[p] * wj[p];
    yi[j] = acc;
  }
}

inline void gemm_nn_row(MatrixView dy, MatrixView w, MutableMatrixView dx, std::size_t i) {
  const double* gi = dy.data + i * dy.cols;
  double* out = dx.data + i * dx.cols;
  std::fill(out, out + dx.cols, 0.0);
  for (std::size_t j = 0; j < w.rows; ++j) {
    const double g = gi[j];
    const double* wj = w.data + j * w.cols;
    for (std::size_t p = 0; p < w.cols; ++p) out[p] += g * wj[p];
  }
}

inline void gemm_tn_row(MatrixView dy, MatrixView x, MutableMatrixView dw, std::size_t j) {
  double* out = dw.data + j * dw.cols;
  for (std::size_t i = 0; i < dy.rows; ++i) {
    const double g = dy.data[i * dy.cols + j];
    const double* xi = x.data + i * x.cols;
    for (std::size_t p = 0; p < x.cols; ++p) out[p] += g * xi[p];
  }
}

// Points sorted by latitude; a neighbor within eps can differ in latitude by
// at most eps / R radians, so only that window is scanned.
struct LatitudeIndex {
  std::vector<std::uint32_t> order;
  std::vector<double> lat;
  double window_deg = 0.0;

  LatitudeIndex(std::span<const GeoPoint> points, double eps_m) : order(points.size()) {
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (points[a].lat != points[b].lat) return points[a].lat < points[b].lat;
      return a < b;
    });
    lat.reserve(points.size());
    for (std::uint32_t idx : order) lat.push_back(points[idx].lat);
    // Small slack so rounding in the bound never excludes a true neighbor.
    window_deg = eps_m / kEarthRadiusM * 180.0 / std::numbers::pi * (1.0 + 1e-9) + 1e-12;
  }

  std::vector<std::uint32_t> query(std::span<const GeoPoint> points, std::size_t i,
                                   double eps_m) const {
    const double lo = points[i].lat - window_deg;
    const double hi = points[i].lat + window_deg;
    auto first = std::lower_bound(lat.begin(), lat.end(), lo);
    auto last = std::upper_bound(lat.begin(), lat.end(), hi);
    std::vector<std::uint32_t> out;
    for (auto it = first; it != last; ++it) {
      const std::uint32_t j = order[static_cast<std::size_t>(it - lat.begin())];
      if (haversine_m(points[i], points[j]) <= eps_m) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace

namespace serial {

void gemm_nt(MatrixView x, MatrixView w, MutableMatrixView y) {
  for (std::size_t i = 0; i < x.rows; ++i) gemm_nt_row(x, w, y, i);
}

void gemm_nn(MatrixView dy, MatrixView w, MutableMatrixView dx) {
  for (std::size_t i = 0; i < dy.rows; ++i) gemm_nn_row(dy, w, dx, i);
}

void gemm_tn_accumulate(MatrixView dy, MatrixView x, MutableMatrixView dw) {
  for (std::size_t j = 0; j < dy.cols; ++j) gemm_tn_row(dy, x, dw, j);
}

NeighborLists region_queries(std::span<const GeoPoint> points, double eps_m) {
  const LatitudeIndex index(points, eps_m);
  NeighborLists lists(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) lists[i] = index.query(points, i, eps_m);
  return lists;
}

}  // namespace serial

namespace omp {

void gemm_nt(MatrixView x, MatrixView w, MutableMatrixView y) {
  const auto n = static_cast<std::ptrdiff_t>(x.rows);
#pragma omp parallel for schedule(static) if (n * static_cast<std::ptrdiff_t>(w.rows) > 4096)
  for (std::ptrdiff_t i = 0; i < n; ++i) gemm_nt_row(x, w, y, static_cast<std::size_t>(i));
}

void gemm_nn(MatrixView dy, MatrixView w, MutableMatrixView dx) {
  const auto n = static_cast<std::ptrdiff_t>(dy.rows);
#pragma omp parallel for schedule(static) if (n * static_cast<std::ptrdiff_t>(w.cols) > 4096)
  for (std::ptrdiff_t i = 0; i < n; ++i) gemm_nn_row(dy, w, dx, static_cast<std::size_t>(i));
}

void gemm_tn_accumulate(MatrixView dy, MatrixView x, MutableMatrixView dw) {
  const auto m = static_cast<std::ptrdiff_t>(dy.cols);
#pragma omp parallel for schedule(static) if (m * static_cast<std::ptrdiff_t>(x.cols) > 4096)
  for (std::ptrdiff_t j = 0; j < m; ++j) gemm_tn_row(dy, x, dw, static_cast<std::size_t>(j));
}

NeighborLists region_queries(std::span<const GeoPoint> points, double eps_m) {
  const LatitudeIndex index(points, eps_m);
  NeighborLists lists(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    lists[static_cast<std::size_t>(i)] = index.query(points, static_cast<std::size_t>(i), eps_m);
  }
  return lists;
}

}  // namespace omp

#ifdef MOBISTRESS_HAVE_OPENMP
void gemm_nt(MatrixView x, MatrixView w, MutableMatrixView y) { omp::gemm_nt(x, w, y); }
void gemm_nn(MatrixView dy, MatrixView w, MutableMatrixView dx) { omp::gemm_nn(dy, w, dx); }
void gemm_tn_accumulate(MatrixView dy, MatrixView x, MutableMatrixView dw) {
  omp::gemm_tn_accumulate(dy, x, dw);
}
NeighborLists region_queries(std::span<const GeoPoint> points, double eps_m) {
  return omp::region_queries(points, eps_m);
}
bool openmp_enabled() { return true; }
#else
void gemm_nt(MatrixView x, MatrixView w, MutableMatrixView y) { serial::gemm_nt(x, w, y); }
void gemm_nn(MatrixView dy, MatrixView w, MutableMatrixView dx) { serial::gemm_nn(dy, w, dx); }
void gemm_tn_accumulate(MatrixView dy, MatrixView x, MutableMatrixView dw) {
  serial::gemm_tn_accumulate(dy, x, dw);
}
NeighborLists region_queries(std::span<const GeoPoint> points, double eps_m) {
  return serial::region_queries(points, eps_m);
}
bool openmp_enabled() { return false; }
#endif

}  // namespace mobistress::kernels
