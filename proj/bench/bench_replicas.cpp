// Serial vs OpenMP replica fan-out, and indexed vs linear-scan Gillespie.

#include <benchmark/benchmark.h>

#include <array>

#include "spinlab/engine.hpp"
#include "spinlab/experiment.hpp"

using namespace spinlab;

namespace {

const ExperimentConfig& martingale_config() {
  static const ExperimentConfig cfg = parse_config_text(R"({
    "experiment": "martingale_classic",
    "graph": {"kind": "torus", "dimension": 2, "side": 16},
    "model": {"lambda": 1.0, "theta": 1.0},
    "p": 0.3, "probes": [1.0, 2.0], "replicas": 64, "seed": 1})");
  return cfg;
}

void BM_FanOutSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(martingale_config(), {Execution::serial, 0}));
  }
}
BENCHMARK(BM_FanOutSerial)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_FanOutParallel(benchmark::State& state) {
  const FanOut fan{Execution::parallel, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(martingale_config(), fan));
  }
}
BENCHMARK(BM_FanOutParallel)->Arg(0)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

template <bool Indexed>
void BM_Gillespie(benchmark::State& state) {
  const Graph g = Graph::torus(2, static_cast<int>(state.range(0)));
  const ModelParams m = ModelParams::bias_voter(2.0, 1.0);
  const std::array<double, 1> probes{1.0};
  std::uint64_t r = 0;
  for (auto _ : state) {
    RngStream init(7, r, "init");
    RngStream rng(7, r++, "dynamics");
    const Configuration c0 = sample_initial(g, 0.5, init);
    if constexpr (Indexed) {
      benchmark::DoNotOptimize(run_gillespie(g, m, c0, 1.0, rng, probes));
    } else {
      benchmark::DoNotOptimize(run_gillespie_reference(g, m, c0, 1.0, rng, probes));
    }
  }
}
BENCHMARK(BM_Gillespie<true>)->Name("BM_GillespieIndexed")->Arg(8)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gillespie<false>)->Name("BM_GillespieLinearScan")->Arg(8)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
