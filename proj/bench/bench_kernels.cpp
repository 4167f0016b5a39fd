// Serial reference vs OpenMP for the two batch kernels.
#include <benchmark/benchmark.h>

#include "iospec/harness.hpp"
#include "iospec/specgen.hpp"

namespace {

using namespace iospec;

std::vector<Specification> corpus(std::size_t n) {
  std::vector<Specification> specs;
  for (std::size_t i = 0; i < n; ++i) {
    GenConfig cfg;
    cfg.seed = i;
    specs.push_back(random_specification(cfg));
  }
  return specs;
}

void BM_Soundness(benchmark::State& state, Execution exec) {
  const auto specs = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(soundness_check(specs, 50, 1, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 50);
}

void BM_FulfillsInternal(benchmark::State& state, Execution exec) {
  const Specification s = example_specification();
  const Candidate c = lower_to_ir(s, ProgramStyle::FoldState);
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(fulfills(c, s, static_cast<std::size_t>(state.range(0)), rng, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK_CAPTURE(BM_Soundness, serial, Execution::Serial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Soundness, parallel, Execution::Parallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FulfillsInternal, serial, Execution::Serial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FulfillsInternal, parallel, Execution::Parallel)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
