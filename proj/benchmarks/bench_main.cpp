#include <benchmark/benchmark.h>

#include "birkhoff/decomposition.hpp"
#include "birkhoff/extension.hpp"
#include "birkhoff/frank_wolfe.hpp"
#include "birkhoff/matching.hpp"
#include "birkhoff/problems.hpp"
#include "birkhoff/random.hpp"

using namespace birkhoff;

namespace {

void BM_ScoreDecomposeFull(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const DoublyStochastic a = random_doubly_stochastic(n, n * n, rng);
  const ScoreMatrix s = random_identifying_score(n, rng);
  std::size_t terms = 0;
  for (auto _ : state) {
    auto d = score_decompose(a, s);
    terms = d.size();
    benchmark::DoNotOptimize(d);
  }
  state.counters["terms"] = static_cast<double>(terms);
}
BENCHMARK(BM_ScoreDecomposeFull)->Arg(5)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_TruncatedEvaluate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const DoublyStochastic a = random_doubly_stochastic(n, n * n, rng);
  const ScoreMatrix s = random_identifying_score(n, rng);
  const Objective f = tsp_objective(gen_euclidean(n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(a, s, f, 5));
}
BENCHMARK(BM_TruncatedEvaluate)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_MaxScoreMatching(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const ScoreMatrix s = random_identifying_score(n, rng);
  const SupportMask mask(n, true);
  for (auto _ : state) benchmark::DoNotOptimize(max_score_matching(mask, s));
}
BENCHMARK(BM_MaxScoreMatching)->Arg(10)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_DynamicSolveTsp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TspInstance inst = gen_euclidean(n, 5);
  const Objective f = tsp_objective(inst);
  SolverConfig cfg;
  cfg.steps = 200;
  cfg.score_update_period = 10;
  cfg.max_terms = 5;
  cfg.record_trace = false;
  Rng rng(6);
  const ScoreMatrix s0 = random_identifying_score(n, rng);
  const DoublyStochastic a0 = initial_point(n, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(solve_dynamic(f, s0, a0, cfg));
  state.counters["iters/s"] = benchmark::Counter(static_cast<double>(cfg.steps) * state.iterations(),
                                                 benchmark::Counter::kIsRate);
}
BENCHMARK(BM_DynamicSolveTsp)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
