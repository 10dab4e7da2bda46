#include <benchmark/benchmark.h>

#include <numbers>

#include "hhes/analysis.hpp"
#include "hhes/cdl.hpp"
#include "hhes/signaling.hpp"

namespace {

void BM_LiCircuit(benchmark::State& state) {
  const auto st = static_cast<hhes::Statistics>(state.range(0));
  const hhes::PhaseSettings s{0.1, 0.7, -0.3, 1.2};
  for (auto _ : state) benchmark::DoNotOptimize(hhes::li_circuit(st, s));
}
BENCHMARK(BM_LiCircuit)->DenseRange(0, 2);

void BM_Substitute(benchmark::State& state) {
  const auto space = hhes::li_space(hhes::Statistics::Fermion);
  const auto initial = hhes::li_initial_state(space, hhes::Statistics::Fermion);
  const auto stages = hhes::li_stages(space, {});
  const auto t = hhes::compose(stages);
  for (auto _ : state) benchmark::DoNotOptimize(hhes::substitute(initial, t));
}
BENCHMARK(BM_Substitute);

void BM_Sweep(benchmark::State& state) {
  const auto values = hhes::linspace(0, 2 * std::numbers::pi, static_cast<std::size_t>(state.range(0)));
  const auto grid = hhes::phase_grid(values);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hhes::sweep("li", hhes::Statistics::Fermion, hhes::TableKind::PathPath, grid));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_Sweep)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SignalingMc(benchmark::State& state) {
  const hhes::SignalProtocol p{hhes::SignalVariant::Dofs, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(hhes::signaling_decode_mc(p, 100000, 1));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SignalingMc)->Arg(2)->Arg(8);

void BM_ParseCompile(benchmark::State& state) {
  const std::string src = hhes::cdl::read_file(std::string(HHES_BENCH_EXAMPLES) + "/li_fermion.cdl");
  const hhes::cdl::ParameterMap params{{"phiL", 0}, {"phiD", 0}, {"phiR", 0}, {"phiU", 0}};
  for (auto _ : state) benchmark::DoNotOptimize(hhes::cdl::compile(hhes::cdl::parse_source(src), params));
}
BENCHMARK(BM_ParseCompile);

}  // namespace

BENCHMARK_MAIN();
