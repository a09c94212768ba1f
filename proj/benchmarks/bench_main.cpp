#include <benchmark/benchmark.h>

#include <string>

#include "tmred/countermodels.hpp"
#include "tmred/generators.hpp"
#include "tmred/io.hpp"
#include "tmred/semantics.hpp"
#include "tmred/tiles.hpp"

using namespace tmred;

namespace {

Machine machine(const std::string& name) {
  return machine_from_json(read_json_file(std::string(TMRED_DATA_DIR) + "/" + name + ".json"));
}

void BM_SpecialTiling(benchmark::State& st) {
  Machine m = machine("M_F");
  size_t side = static_cast<size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(special_tiling(m, 2, side, side));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_SpecialTiling)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_TileSet(benchmark::State& st) {
  Machine m = machine("M_F");
  for (auto _ : st) benchmark::DoNotOptimize(tile_set(m, static_cast<size_t>(st.range(0))));
}
BENCHMARK(BM_TileSet)->Arg(0)->Arg(4)->Arg(16);

void BM_SibGrid(benchmark::State& st) {
  GridSpec g = grid_spec(machine("M_F"), static_cast<size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(sib_grid_model(g));
}
BENCHMARK(BM_SibGrid)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_CompactSib(benchmark::State& st) {
  GridSpec g = grid_spec(machine("M_F"), static_cast<size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(compact_sib_grid_model(g));
}
BENCHMARK(BM_CompactSib)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_EvalTilingPrime(benchmark::State& st) {
  GridSpec g = grid_spec(machine("M_F"), static_cast<size_t>(st.range(0)));
  Structure sib = sib_grid_model(g);
  F f = directed_suite(g.tiles)["Tiling'"];
  for (auto _ : st) benchmark::DoNotOptimize(eval_classical(sib, f));
  st.counters["elems"] = static_cast<double>(sib.N());
}
BENCHMARK(BM_EvalTilingPrime)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_S1Extension(benchmark::State& st) {
  GridSpec g = grid_spec(machine("M_F"), 1);
  Structure sib = sib_grid_model(g);
  size_t k = g.tiles.k();
  for (auto _ : st) benchmark::DoNotOptimize(s1_extension(sib, k));
}
BENCHMARK(BM_S1Extension)->Unit(benchmark::kMillisecond);

void BM_StarModel(benchmark::State& st) {
  GridSpec g = grid_spec(machine("M_F"), 0);
  Structure sib = compact_sib_grid_model(g);
  for (auto _ : st) benchmark::DoNotOptimize(star_modal_model(sib));
}
BENCHMARK(BM_StarModel)->Unit(benchmark::kMillisecond);

void BM_BoundedValidity(benchmark::State& st) {
  F f = parse("(or (forall x (atom P x x)) (exists x (not (atom P x x))))");
  for (auto _ : st) benchmark::DoNotOptimize(bounded_validity_classical(f, static_cast<size_t>(st.range(0))));
}
BENCHMARK(BM_BoundedValidity)->DenseRange(1, 3);

}  // namespace
BENCHMARK_MAIN();
