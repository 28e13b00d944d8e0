#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mobistress/geo_trace.hpp"

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP variant; both visit every output element with the same summation
// order, so their results agree bit for bit. The unqualified entry points
// dispatch to the OpenMP variant when the library is built with it.

namespace mobistress::kernels {

struct MatrixView {
  const double* data;
  std::size_t rows;
  std::size_t cols;
};

struct MutableMatrixView {
  double* data;
  std::size_t rows;
  std::size_t cols;
};

using NeighborLists = std::vector<std::vector<std::uint32_t>>;

namespace serial {
// y (n x m) = x (n x k) * w (m x k)^T
void gemm_nt(MatrixView x, MatrixView w, MutableMatrixView y);
// dx (n x k) = dy (n x m) * w (m x k)
void gemm_nn(MatrixView dy, MatrixView w, MutableMatrixView dx);
// dw (m x k) += dy (n x m)^T * x (n x k)
void gemm_tn_accumulate(MatrixView dy, MatrixView x, MutableMatrixView dw);
// Indices j (ascending, including i) with haversine(i, j) <= eps_m.
NeighborLists region_queries(std::span<const GeoPoint> points, double eps_m);
}  // namespace serial

namespace omp {
void gemm_nt(MatrixView x, MatrixView w, MutableMatrixView y);
void gemm_nn(MatrixView dy, MatrixView w, MutableMatrixView dx);
void gemm_tn_accumulate(MatrixView dy, MatrixView x, MutableMatrixView dw);
NeighborLists region_queries(std::span<const GeoPoint> points, double eps_m);
}  // namespace omp

void gemm_nt(MatrixView x, MatrixView w, MutableMatrixView y);
void gemm_nn(MatrixView dy, MatrixView w, MutableMatrixView dx);
void gemm_tn_accumulate(MatrixView dy, MatrixView x, MutableMatrixView dw);
NeighborLists region_queries(std::span<const GeoPoint> points, double eps_m);

bool openmp_enabled();

}  // namespace mobistress::kernels
