#include <benchmark/benchmark.h>

#include <omp.h>

#include "mriu/minimize.hpp"
#include "mriu/random.hpp"
#include "mriu/studies.hpp"

using namespace mriu;

static void BM_KmodeApply(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  RngStream rng(1, 0);
  const Dims dims{d, d, d};
  const auto c = haar_state(dims, rng);
  const auto u = haar_unitary(d, rng);
  std::vector<Complex> out(c.size());
  for (auto _ : state) {
    kmode_apply(u, c.coeffs(), out, dims, 1);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}
BENCHMARK(BM_KmodeApply)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_RiuMinimize(benchmark::State& state) {
  RngStream rng(2, 0);
  const auto c = haar_state({2, 2, 2}, rng);
  RiuOptions o;
  o.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(riu_minimize(c, RenyiOrder(2.0), o).value);
}
BENCHMARK(BM_RiuMinimize)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

// Serial reference path against the OpenMP path on the same trials.
static void BM_EnsembleTangle(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.statistic = Statistic::Tangle;
  cfg.samples = 20000;
  const auto exec = state.range(0) ? Execution::Parallel : Execution::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_stat(cfg, exec).mean);
  state.SetLabel(state.range(0) ? "parallel x" + std::to_string(omp_get_max_threads()) : "serial");
}
BENCHMARK(BM_EnsembleTangle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_RiuTable(benchmark::State& state) {
  RiuOptions o;
  o.restarts = 4;
  const auto exec = state.range(0) ? Execution::Parallel : Execution::Serial;
  for (auto _ : state) {
    benchmark::DoNotOptimize(riu_table(3, 2, {RenyiOrder(1.0), RenyiOrder(2.0)}, 16, o, 1, exec).size());
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_RiuTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
