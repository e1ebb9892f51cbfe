#include <benchmark/benchmark.h>

#include "dynoco/environment.hpp"
#include "dynoco/harness.hpp"
#include "dynoco/optimizers.hpp"
#include "dynoco/region.hpp"
#include "dynoco/rng.hpp"

namespace {

dynoco::DecisionVector random_vector(dynoco::PhiloxStream& rng, std::size_t p, double scale) {
  std::vector<double> v(p);
  for (auto& x : v) x = scale * rng.normal();
  return dynoco::DecisionVector(std::move(v));
}

void BM_BallWeightedProjection(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto region = dynoco::FeasibleRegion::centered_ball(p, 1.0);
  dynoco::PhiloxStream rng(7, 0);
  const auto x = random_vector(rng, p, 3.0);
  const auto w = dynoco::abs(random_vector(rng, p, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(region.project_weighted(w, x));
}
BENCHMARK(BM_BallWeightedProjection)->Arg(2)->Arg(10)->Arg(100);

void BM_Step(benchmark::State& state, dynoco::Algorithm algo) {
  dynoco::EnvironmentConfig env;
  env.horizon = 1000;
  env.drift_every = 1000;
  const auto rounds = dynoco::make_drifting_regression(env);
  dynoco::OptimizerConfig cfg;
  cfg.algorithm = algo;
  auto opt = dynoco::init(cfg, env.region, env.region.center());
  std::size_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynoco::step(opt, rounds[t], env.region, cfg));
    t = (t + 1) % rounds.size();
  }
}
BENCHMARK_CAPTURE(BM_Step, adagrad, dynoco::Algorithm::AdaGrad);
BENCHMARK_CAPTURE(BM_Step, m_adagrad, dynoco::Algorithm::MAdaGrad);
BENCHMARK_CAPTURE(BM_Step, mm_adagrad, dynoco::Algorithm::MMAdaGrad);

void BM_RunSingleFigure1(benchmark::State& state) {
  auto cfg = dynoco::RunConfig::defaults();
  cfg.optimizer.algorithm = dynoco::Algorithm::MMAdaGrad;
  for (auto _ : state) benchmark::DoNotOptimize(dynoco::run_single(cfg, 0).summary.final_dynamic_regret);
}
BENCHMARK(BM_RunSingleFigure1)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
