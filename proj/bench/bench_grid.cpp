// Serial reference kernels against their OpenMP counterparts on the
// r = 0.25, s = -1/2 surface.

#include <benchmark/benchmark.h>

#include "flatfront/grid_kernels.hpp"
#include "flatfront/moduli_solver.hpp"

using namespace flatfront;

namespace {

const AnnulusMaps& surface() {
  static const ThetaContext ctx(0.25);
  static const AnnulusMaps maps(solve_canonical(ctx, 0.25, -0.5).moduli, ctx);
  return maps;
}

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::kParallel : Exec::kSerial; }

void BM_ScanP(benchmark::State& st) {
  const auto pts = interior_polar_grid(0.25, static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(scan_p(surface(), pts, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(pts.size()));
}
BENCHMARK(BM_ScanP)->ArgsProduct({{0, 1}, {50, 100}})->Unit(benchmark::kMillisecond);

void BM_FirstForm(benchmark::State& st) {
  const auto pts = interior_polar_grid(0.25, static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(sample_first_form(surface(), pts, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(pts.size()));
}
BENCHMARK(BM_FirstForm)->ArgsProduct({{0, 1}, {50, 100}})->Unit(benchmark::kMillisecond);

void BM_Rings(benchmark::State& st) {
  std::vector<double> radii;
  for (int i = 1; i < 32; ++i) radii.push_back(std::pow(0.25, 1.0 - i / 32.0));
  for (auto _ : st) benchmark::DoNotOptimize(sample_rings(surface(), radii, static_cast<int>(st.range(1)), exec_of(st)));
}
BENCHMARK(BM_Rings)->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
