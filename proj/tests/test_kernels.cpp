#include <gtest/gtest.h>

#include <vector>

#include "mobistress/kernels.hpp"
#include "mobistress/rng.hpp"

using namespace mobistress;
using namespace mobistress::kernels;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

}  // namespace

TEST(Kernels, GemmVariantsAgreeBitForBit) {
  Rng rng(101);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.index(70), k = 1 + rng.index(60), m = 1 + rng.index(60);
    const auto x = random_vec(rng, n * k), w = random_vec(rng, m * k), dy = random_vec(rng, n * m);
    std::vector<double> y1(n * m), y2(n * m), dx1(n * k), dx2(n * k);
    std::vector<double> dw1 = random_vec(rng, m * k), dw2 = dw1;
    serial::gemm_nt({x.data(), n, k}, {w.data(), m, k}, {y1.data(), n, m});
    omp::gemm_nt({x.data(), n, k}, {w.data(), m, k}, {y2.data(), n, m});
    serial::gemm_nn({dy.data(), n, m}, {w.data(), m, k}, {dx1.data(), n, k});
    omp::gemm_nn({dy.data(), n, m}, {w.data(), m, k}, {dx2.data(), n, k});
    serial::gemm_tn_accumulate({dy.data(), n, m}, {x.data(), n, k}, {dw1.data(), m, k});
    omp::gemm_tn_accumulate({dy.data(), n, m}, {x.data(), n, k}, {dw2.data(), m, k});
    EXPECT_EQ(y1, y2);
    EXPECT_EQ(dx1, dx2);
    EXPECT_EQ(dw1, dw2);
  }
}

TEST(Kernels, GemmAgainstNaiveLoops) {
  Rng rng(102);
  const std::size_t n = 7, k = 5, m = 4;
  const auto x = random_vec(rng, n * k), w = random_vec(rng, m * k), dy = random_vec(rng, n * m);
  std::vector<double> y(n * m), dx(n * k), dw(m * k, 1.0);
  gemm_nt({x.data(), n, k}, {w.data(), m, k}, {y.data(), n, m});
  gemm_nn({dy.data(), n, m}, {w.data(), m, k}, {dx.data(), n, k});
  gemm_tn_accumulate({dy.data(), n, m}, {x.data(), n, k}, {dw.data(), m, k});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0;
      for (std::size_t c = 0; c < k; ++c) s += x[i * k + c] * w[j * k + c];
      EXPECT_NEAR(y[i * m + j], s, 1e-12);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0;
      for (std::size_t j = 0; j < m; ++j) s += dy[i * m + j] * w[j * k + c];
      EXPECT_NEAR(dx[i * k + c], s, 1e-12);
    }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < k; ++c) {
      double s = 1.0;
      for (std::size_t i = 0; i < n; ++i) s += dy[i * m + j] * x[i * k + c];
      EXPECT_NEAR(dw[j * k + c], s, 1e-12);
    }
}

TEST(Kernels, RegionQueriesAgreeAcrossVariants) {
  Rng rng(103);
  std::vector<GeoPoint> pts;
  for (int i = 0; i < 800; ++i) pts.push_back({i, 43.7 + rng.uniform(-0.02, 0.02), -72.29 + rng.uniform(-0.03, 0.03)});
  EXPECT_EQ(serial::region_queries(pts, 250), omp::region_queries(pts, 250));
  EXPECT_TRUE(serial::region_queries({}, 100).empty());
}
