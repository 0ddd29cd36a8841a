// Serial reference kernels against their OpenMP versions on dense value
// tables of growing size.

#include <benchmark/benchmark.h>

#include <vector>

#include "tangles/connectivity.hpp"
#include "tangles/fixtures.hpp"
#include "tangles/kernels.hpp"

namespace {

using namespace tangles;

// Edge-boundary of a ladder with enough edges for the requested ground set.
OraclePtr ladder(int elements) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; static_cast<int>(edges.size()) < elements; ++i) {
    edges.emplace_back(2 * i, 2 * i + 2);
    if (static_cast<int>(edges.size()) < elements) edges.emplace_back(2 * i + 1, 2 * i + 3);
    if (static_cast<int>(edges.size()) < elements) edges.emplace_back(2 * i + 2, 2 * i + 3);
  }
  int n = 0;
  for (auto [a, b] : edges) n = std::max({n, a + 1, b + 1});
  return edge_boundary_fn(Graph(n, edges));
}

const std::uint16_t* table_for(int elements) {
  static std::vector<OraclePtr> keep;
  keep.push_back(ladder(elements));
  return keep.back()->table();
}

void BM_ScanBox(benchmark::State& state, kernels::Exec exec) {
  const int n = static_cast<int>(state.range(0));
  const auto* table = table_for(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::scan_box(table, Subset::singleton(0), Subset::full(n) - Subset::singleton(n - 1), exec));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (n - 2)));
}

void BM_SupersetMin(benchmark::State& state, kernels::Exec exec) {
  const int n = static_cast<int>(state.range(0));
  const auto* table = table_for(n);
  std::vector<std::uint16_t> out(std::size_t{1} << n);
  for (auto _ : state) {
    kernels::superset_min(table, Subset::full(n), out.data(), exec);
    benchmark::ClobberMemory();
  }
}

void BM_Submodularity(benchmark::State& state, kernels::Exec exec) {
  const int n = static_cast<int>(state.range(0));
  const auto* table = table_for(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::submodularity_violation(table, n, exec));
}

void BM_FillMissing(benchmark::State& state, kernels::Exec exec) {
  const int n = static_cast<int>(state.range(0));
  auto kappa = ladder(n);
  std::vector<std::uint16_t> out(std::size_t{1} << n);
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), ConnectivityOracle::kUnset);
    benchmark::DoNotOptimize(kernels::fill_missing(n, [&](Subset x) { return kappa->evaluate(x); }, out.data(), exec));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_ScanBox, serial, tangles::kernels::Exec::kSerial)->DenseRange(14, 20, 3);
BENCHMARK_CAPTURE(BM_ScanBox, omp, tangles::kernels::Exec::kParallel)->DenseRange(14, 20, 3);
BENCHMARK_CAPTURE(BM_SupersetMin, serial, tangles::kernels::Exec::kSerial)->DenseRange(14, 20, 3);
BENCHMARK_CAPTURE(BM_SupersetMin, omp, tangles::kernels::Exec::kParallel)->DenseRange(14, 20, 3);
BENCHMARK_CAPTURE(BM_Submodularity, serial, tangles::kernels::Exec::kSerial)->DenseRange(8, 12, 2);
BENCHMARK_CAPTURE(BM_Submodularity, omp, tangles::kernels::Exec::kParallel)->DenseRange(8, 12, 2);
BENCHMARK_CAPTURE(BM_FillMissing, serial, tangles::kernels::Exec::kSerial)->DenseRange(14, 18, 2);
BENCHMARK_CAPTURE(BM_FillMissing, omp, tangles::kernels::Exec::kParallel)->DenseRange(14, 18, 2);

BENCHMARK_MAIN();
