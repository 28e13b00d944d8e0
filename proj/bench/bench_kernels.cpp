// Serial reference vs OpenMP variant for the hot kernels.
#include <benchmark/benchmark.h>

#include <vector>

#include "mobistress/kernels.hpp"
#include "mobistress/rng.hpp"

using namespace mobistress;
namespace k = mobistress::kernels;

namespace {

struct GemmData {
  std::size_t n, in, out;
  std::vector<double> x, w, y;
  explicit GemmData(std::size_t batch) : n(batch), in(57), out(35), x(n * in), w(out * in), y(n * out) {
    Rng rng(1);
    for (double& v : x) v = rng.normal();
    for (double& v : w) v = rng.normal();
  }
};

template <void (*Gemm)(k::MatrixView, k::MatrixView, k::MutableMatrixView)>
void BM_GemmNt(benchmark::State& state) {
  GemmData d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Gemm({d.x.data(), d.n, d.in}, {d.w.data(), d.out, d.in}, {d.y.data(), d.n, d.out});
    benchmark::DoNotOptimize(d.y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.n * d.in * d.out));
}

std::vector<GeoPoint> day_of_fixes(std::size_t n) {
  Rng rng(2);
  std::vector<GeoPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({static_cast<std::int64_t>(i) * 60, 43.70 + rng.uniform(-0.02, 0.02),
                   -72.29 + rng.uniform(-0.03, 0.03)});
  }
  return pts;
}

template <k::NeighborLists (*Query)(std::span<const GeoPoint>, double)>
void BM_RegionQueries(benchmark::State& state) {
  const auto pts = day_of_fixes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Query(pts, 300.0));
}

}  // namespace

BENCHMARK(BM_GemmNt<k::serial::gemm_nt>)->Name("gemm_nt/serial")->Arg(32)->Arg(1024);
BENCHMARK(BM_GemmNt<k::omp::gemm_nt>)->Name("gemm_nt/omp")->Arg(32)->Arg(1024);
BENCHMARK(BM_RegionQueries<k::serial::region_queries>)->Name("region_queries/serial")->Arg(500)->Arg(4000);
BENCHMARK(BM_RegionQueries<k::omp::region_queries>)->Name("region_queries/omp")->Arg(500)->Arg(4000);

BENCHMARK_MAIN();
