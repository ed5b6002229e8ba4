#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "landau/parallel.hpp"
#include "landau/wellposedness.hpp"

using namespace landau;

namespace {

std::shared_ptr<const ModeTable> make_table(int cap) {
  return std::make_shared<const ModeTable>(
      enumerate_modes(cap, cap, FieldStrength(1.0)));
}

cplx bump(double x, double y) {
  const double dx = x - 0.5;
  return cplx(std::exp(-(dx * dx + y * y)), 0.0);
}

void BM_LaguerreEval(benchmark::State& state) {
  const int p = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(laguerre_eval(p, 8, 12.5));
}
BENCHMARK(BM_LaguerreEval)->Arg(4)->Arg(16);

void BM_BasisEval(benchmark::State& state) {
  const FieldStrength field(1.0);
  const ModeIndex idx{Family::F1, 8, std::uint32_t(state.range(0))};
  for (auto _ : state)
    benchmark::DoNotOptimize(basis_eval(idx, 0.7, -0.4, field));
}
BENCHMARK(BM_BasisEval)->Arg(4)->Arg(16);

void BM_HamiltonianApply(benchmark::State& state) {
  const FieldStrength field(1.0);
  const ModeIndex idx{Family::F1, 8, 8};
  for (auto _ : state)
    benchmark::DoNotOptimize(hamiltonian_apply_exact(idx, 0.7, -0.4, field));
}
BENCHMARK(BM_HamiltonianApply);

void BM_ForwardTransform(benchmark::State& state) {
  set_max_threads(1);
  auto table = make_table(int(state.range(0)));
  const QuadratureGrid grid = grid_for_table(*table);
  for (auto _ : state)
    benchmark::DoNotOptimize(forward_transform(bump, grid, table));
  state.SetItemsProcessed(int64_t(state.iterations()) *
                          int64_t(table->size()));
}
BENCHMARK(BM_ForwardTransform)->Arg(4)->Arg(8)->Arg(16);

void BM_InverseTransform(benchmark::State& state) {
  set_max_threads(1);
  auto table = make_table(int(state.range(0)));
  const QuadratureGrid grid = grid_for_table(*table);
  SpectralCoefficients coeffs = forward_transform(bump, grid, table);
  std::vector<GridPoint> pts;
  for (int i = 0; i < 256; ++i) {
    const double t = double(i) / 255.0;
    pts.push_back({-3.0 + 6.0 * t, 3.0 - 6.0 * t});
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(inverse_transform(coeffs, pts));
  state.SetItemsProcessed(int64_t(state.iterations()) * 256);
}
BENCHMARK(BM_InverseTransform)->Arg(4)->Arg(8);

void BM_EvolveMode(benchmark::State& state) {
  const SpeedProfile profile = SpeedProfile::sine(2.0, 1.0, 1.0, 1.0);
  const std::vector<double> times{1.0};
  const double lambda = double(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        evolve_mode(lambda, cplx(1.0, 0.0), cplx(0.0, 0.3), profile, times,
                    1e-3));
}
BENCHMARK(BM_EvolveMode)->Arg(1)->Arg(25)->Arg(100);

void BM_SolveCauchy(benchmark::State& state) {
  set_max_threads(1);
  auto table = make_table(int(state.range(0)));
  const QuadratureGrid grid = grid_for_table(*table);
  CauchyProblem problem{.u0 = forward_transform(bump, grid, table),
                        .u1 = SpectralCoefficients::zero(table),
                        .profile = SpeedProfile::sine(2.0, 1.0, 1.0, 1.0),
                        .s = 0.0,
                        .output_times = {0.0, 0.5, 1.0}};
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_cauchy(problem, 1e-3));
  state.SetItemsProcessed(int64_t(state.iterations()) *
                          int64_t(table->size()));
}
BENCHMARK(BM_SolveCauchy)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
