// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "hmmaro/bench.hpp"
#include "hmmaro/em.hpp"
#include "hmmaro/kernels.hpp"
#include "hmmaro/random.hpp"

using namespace hmmaro;

namespace {

struct Workload {
  HmmModel model;
  std::vector<ObservationSequence> data;
};

Workload make_workload(std::size_t sequences) {
  Rng rng(17);
  Workload w{random_discrete_model(8, 20, rng), {}};
  const auto generator = random_discrete_model(8, 20, rng);
  for (std::size_t i = 0; i < sequences; ++i) w.data.push_back(sample(generator, 100 + rng.uniform_int(0, 100), rng).observations);
  return w;
}

void BM_LogLikelihoods(benchmark::State& state, Execution exec) {
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::log_likelihoods(w.model, w.data, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Statistics(benchmark::State& state, Execution exec) {
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::statistics(w.model, w.data, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BaumWelchStep(benchmark::State& state, Execution exec) {
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)));
  TrainConfig config;
  config.execution = exec;
  for (auto _ : state) benchmark::DoNotOptimize(bw_step(w.model, w.data, config));
}

void BM_Repetitions(benchmark::State& state, bool parallel) {
  Rng rng(5);
  const auto ds = synthesize(random_discrete_model(3, 8, rng), 20, {20, 40}, default_alphabet(8), rng);
  ExperimentConfig config;
  config.algorithm = Algorithm::maro;
  config.states = 3;
  config.iterations = 200;
  config.repetitions = 8;
  config.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(config, ds));
}

}  // namespace

BENCHMARK_CAPTURE(BM_LogLikelihoods, serial, Execution::serial)->Arg(16)->Arg(128)->Arg(512);
BENCHMARK_CAPTURE(BM_LogLikelihoods, omp, Execution::parallel)->Arg(16)->Arg(128)->Arg(512);
BENCHMARK_CAPTURE(BM_Statistics, serial, Execution::serial)->Arg(16)->Arg(128)->Arg(512);
BENCHMARK_CAPTURE(BM_Statistics, omp, Execution::parallel)->Arg(16)->Arg(128)->Arg(512);
BENCHMARK_CAPTURE(BM_BaumWelchStep, serial, Execution::serial)->Arg(128);
BENCHMARK_CAPTURE(BM_BaumWelchStep, omp, Execution::parallel)->Arg(128);
BENCHMARK_CAPTURE(BM_Repetitions, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Repetitions, omp, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
