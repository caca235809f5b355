#include <string>

#include <benchmark/benchmark.h>

#include "qgraph/casimir.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/interval_solver.hpp"
#include "qgraph/oracle.hpp"
#include "qgraph/secular.hpp"
#include "qgraph/zeta.hpp"

namespace {

using namespace qgraph;

GraphDocument load(const char* name) {
  return load_graph_file(std::string(QGRAPH_BENCH_DATA) + "/" + name);
}

void BM_SolveImagAxisBump(benchmark::State& state) {
  const GraphDocument doc = load("interval_bump.json");
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_imag_axis(doc.graph.bond(0), t));
}
BENCHMARK(BM_SolveImagAxisBump)->Arg(1)->Arg(100);

void BM_FImagChain(benchmark::State& state) {
  const GraphDocument doc = load("chain_bump.json");
  for (auto _ : state) benchmark::DoNotOptimize(F_imag(doc.graph, doc.matching, 3.0));
}
BENCHMARK(BM_FImagChain);

void BM_ZetaDirBump(benchmark::State& state) {
  const GraphDocument doc = load("interval_bump.json");
  for (auto _ : state) benchmark::DoNotOptimize(zeta_dir_bond(doc.graph.bond(0), 0.75, 1.0));
}
BENCHMARK(BM_ZetaDirBump)->Unit(benchmark::kMillisecond);

void BM_ZetaTotalStar(benchmark::State& state) {
  const GraphDocument doc = load("star_delta1.json");
  for (auto _ : state) benchmark::DoNotOptimize(zeta_total(doc.graph, doc.matching, 0.75, 0.5));
}
BENCHMARK(BM_ZetaTotalStar)->Unit(benchmark::kMillisecond);

void BM_CasimirForceChain(benchmark::State& state) {
  const GraphDocument doc = load("chain_bump.json");
  for (auto _ : state) benchmark::DoNotOptimize(casimir_force(doc.graph, doc.matching, 1));
}
BENCHMARK(BM_CasimirForceChain)->Unit(benchmark::kMillisecond);

void BM_ScanStar(benchmark::State& state) {
  const GraphDocument doc = load("star_delta1.json");
  const double k_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_spectrum(doc.graph, doc.matching, k_max));
}
BENCHMARK(BM_ScanStar)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
