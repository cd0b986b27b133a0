#include <benchmark/benchmark.h>

#include "tv4/tv4.hpp"

using namespace tv4;

namespace {

Image bench_image(int n) {
  Image x(n, n);
  x.data() = random_vector(n * n, 0xBE7C4);
  return x;
}

void BM_Diff4(benchmark::State& state) {
  const Image x = bench_image(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(diff4(x));
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_Diff4)->Arg(64)->Arg(256);

void BM_Diff4Adjoint(benchmark::State& state) {
  const Image x = bench_image(static_cast<int>(state.range(0)));
  const Field4 u = diff4(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(diff4_adjoint(u));
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_Diff4Adjoint)->Arg(64)->Arg(256);

void BM_InterpAllStars(benchmark::State& state) {
  const Image x = bench_image(static_cast<int>(state.range(0)));
  const Field4 u = diff4(x);
  for (auto _ : state) {
    for (Star s : kAllStars) benchmark::DoNotOptimize(interp(s, u));
  }
  state.SetItemsProcessed(state.iterations() * x.size() * 4);
}
BENCHMARK(BM_InterpAllStars)->Arg(64)->Arg(256);

void BM_GroupSoftThreshold(benchmark::State& state) {
  const Image x = bench_image(static_cast<int>(state.range(0)));
  const Field4 u = diff4(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(group_soft_threshold(u, 0.25));
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_GroupSoftThreshold)->Arg(64)->Arg(256);

void BM_TvPrn(benchmark::State& state) {
  const Image x = bench_image(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tv_prn(x));
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_TvPrn)->Arg(64)->Arg(256);

void BM_CompositeDenoiseIter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image y = bench_image(n);
  ProblemSpec spec{DenoiseFidelity{y}, Regularizer::prn, 0.1};
  SolverConfig cfg = default_config(Regularizer::prn, false, n, n);
  cfg.iters = 50;
  cfg.warn_step_sizes = false;
  const Image x0 = default_start(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_composite(spec, cfg, x0));
  }
  state.SetItemsProcessed(state.iterations() * 50 * y.size());
}
BENCHMARK(BM_CompositeDenoiseIter)->Arg(64);

void BM_ConstrainedDenoiseIter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image y = bench_image(n);
  ProblemSpec spec{DenoiseFidelity{y}, Regularizer::refined, 0.075};
  SolverConfig cfg = default_config(Regularizer::refined, false, n, n);
  cfg.iters = 50;
  cfg.warn_step_sizes = false;
  const Image x0 = default_start(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_constrained(spec, cfg, x0));
  }
  state.SetItemsProcessed(state.iterations() * 50 * y.size());
}
BENCHMARK(BM_ConstrainedDenoiseIter)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
