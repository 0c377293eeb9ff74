#include <benchmark/benchmark.h>

#include <limits>

#include "mellip/covering.hpp"
#include "mellip/ell_solver.hpp"
#include "mellip/svp.hpp"

namespace {

using namespace mellip;

void BM_GridBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GaussGrid grid = GaussGrid::build(GridParams::make(n));
    benchmark::DoNotOptimize(grid.size());
  }
}
BENCHMARK(BM_GridBuild)->DenseRange(2, 6);

void BM_FTilde(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GaussGrid grid = GaussGrid::build(GridParams::make(n));
  const Body body = Body::lp_ball(n, std::numeric_limits<double>::infinity());
  const Mat a = Mat::Identity(n, n) * 1.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_tilde(body, grid, a));
  }
}
BENCHMARK(BM_FTilde)->DenseRange(2, 6);

void BM_FTildeSubgradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GaussGrid grid = GaussGrid::build(GridParams::make(n));
  const Body body = Body::lp_ball(n, 1.0).normalize().body;
  const Mat a = Mat::Identity(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_tilde_subgradient(body, grid, a));
  }
}
BENCHMARK(BM_FTildeSubgradient)->DenseRange(2, 5);

void BM_SolveEllProgram(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Body body = Body::lp_ball(n, 2.0);
  const GaussGrid grid = GaussGrid::build(GridParams::make(n));
  SolverConfig cfg;
  cfg.epsilon = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ell_program(body, grid, cfg).value);
  }
}
BENCHMARK(BM_SolveEllProgram)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_EnumerateBall(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Mat cols = Mat::Identity(n, n);
  cols(0, n - 1) = 1.0;
  const LatticeBasis basis = LatticeBasis::from_columns(cols);
  const Ellipsoid ball{Mat::Identity(n, n), 2.5};
  const Vec center = Vec::Zero(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_in_ellipsoid(basis, center, ball).points.size());
  }
}
BENCHMARK(BM_EnumerateBall)->DenseRange(2, 6);

void BM_SvpCube(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Mat cols = Mat::Identity(n, n);
  for (int i = 0; i + 1 < n; ++i) cols(i, i + 1) = 2.0;
  const LatticeBasis basis = LatticeBasis::from_columns(cols);
  const Body cube = Body::lp_ball(n, std::numeric_limits<double>::infinity());
  for (auto _ : state) {
    benchmark::DoNotOptimize(svp(basis, cube).norm_value);
  }
}
BENCHMARK(BM_SvpCube)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
