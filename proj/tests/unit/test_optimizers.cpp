#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "dynoco/environment.hpp"
#include "dynoco/errors.hpp"
#include "dynoco/optimizers.hpp"
#include "oracles/reference_values.inc"

using dynoco::Algorithm;
using dynoco::DecisionVector;
using dynoco::FeasibleRegion;
using dynoco::LossRound;
using dynoco::OptimizerConfig;

namespace {

OptimizerConfig make_cfg(Algorithm algo, double alpha, double beta, std::size_t k = 1) {
  OptimizerConfig cfg;
  cfg.algorithm = algo;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.inner_iterations = k;
  return cfg;
}

// f(x) = x^2 on [-1, 1].
LossRound square_at_zero() { return LossRound::quadratic({0.0}, 2.0, {0.0}); }

// Scalar stream shared with the high-precision reference script.
LossRound scripted_round(std::size_t t, double lambda) {
  const double c = static_cast<double>((37 * t) % 23) / 10.0 - 1.1;
  return LossRound::quadratic({c}, lambda, {std::clamp(c, -1.0, 1.0)});
}

template <std::size_t N>
void check_against_reference(const double (&ref)[N], const OptimizerConfig& cfg, double lambda) {
  const auto box = FeasibleRegion::cube(1, -1, 1);
  auto state = dynoco::init(cfg, box, {ref[0]});
  for (std::size_t t = 1; t < N; ++t) {
    const auto out = dynoco::step(state, scripted_round(t, lambda), box, cfg);
    CHECK(std::fabs(out.played[0] - ref[t - 1]) <= 1e-12);
    CHECK(std::fabs(out.next[0] - ref[t]) <= 1e-12);
  }
}

std::vector<LossRound> random_regression(std::uint64_t seed, std::size_t horizon) {
  dynoco::EnvironmentConfig env;
  env.dimension = 5;
  env.horizon = horizon;
  env.drift_every = std::max<std::size_t>(1, horizon / 3);
  env.region = FeasibleRegion::centered_ball(5, 2.5);
  env.seed = seed;
  return dynoco::make_drifting_regression(env);
}

}  // namespace

TEST_CASE("m-adagrad hand-computed trajectory") {
  const auto box = FeasibleRegion::cube(1, -1, 1);
  const auto cfg = make_cfg(Algorithm::MAdaGrad, 0.5, 0.5);
  auto state = dynoco::init(cfg, box, {0.5});
  auto out = dynoco::step_m_adagrad(state, square_at_zero(), box, cfg);
  CHECK(out.played[0] == 0.5);
  CHECK(std::fabs(out.next[0] - 0.25) <= 1e-9);
  CHECK(state.moments[0].momentum[0] == 0.5);
  CHECK(state.moments[0].accumulator[0] == 1.0);

  out = dynoco::step_m_adagrad(state, square_at_zero(), box, cfg);
  CHECK(state.moments[0].momentum[0] == 0.5);
  CHECK(state.moments[0].accumulator[0] == 1.25);
  CHECK(std::fabs(out.next[0] - (0.25 - 0.5 * 0.5 / std::sqrt(1.25))) <= 1e-12);
  CHECK(std::fabs(out.next[0] - 0.026393) <= 1e-6);
}

TEST_CASE("mm-adagrad hand-computed round") {
  // beta = 0, so each inner momentum is the raw gradient: the first inner step
  // lands on the minimizer and the second sees a zero gradient.
  const auto box = FeasibleRegion::cube(1, -1, 1);
  const auto cfg = make_cfg(Algorithm::MMAdaGrad, 0.5, 0.0, 2);
  auto state = dynoco::init(cfg, box, {0.5});
  const auto out = dynoco::step_mm_adagrad(state, square_at_zero(), box, cfg);
  CHECK(out.played[0] == 0.5);
  REQUIRE(out.gradients.size() == 2);
  CHECK(out.gradients[0][0] == 1.0);
  CHECK(out.gradients[1][0] == 0.0);
  CHECK(state.moments[0].accumulator[0] == 1.0);
  CHECK(state.moments[1].accumulator[0] == 0.0);
  CHECK(std::fabs(out.next[0]) <= 1e-9);

  // beta = 0.5 from the same start: z2 = 0.25, then g = 0.5, m = 0.25, v = 0.25.
  const auto half = make_cfg(Algorithm::MMAdaGrad, 0.5, 0.5, 2);
  auto s2 = dynoco::init(half, box, {0.5});
  const auto o2 = dynoco::step_mm_adagrad(s2, square_at_zero(), box, half);
  CHECK(o2.gradients[1][0] == 0.5);
  CHECK(s2.moments[1].momentum[0] == 0.25);
  CHECK(std::fabs(o2.next[0] - (0.25 - 0.5 * 0.25 / 0.5)) <= 1e-9);
}

TEST_CASE("ogd examples") {
  const auto box = FeasibleRegion::cube(1, -1, 1);
  const auto cfg = make_cfg(Algorithm::Ogd, 0.25, 0.0);
  auto state = dynoco::init(cfg, box, {0.5});
  CHECK(state.moments.empty());
  CHECK(dynoco::step_ogd(state, square_at_zero(), box, cfg).next[0] == 0.25);

  auto at_min = dynoco::init(cfg, box, {0.0});
  CHECK(dynoco::step_ogd(at_min, square_at_zero(), box, cfg).next[0] == 0.0);

  const auto big = make_cfg(Algorithm::Ogd, 10.0, 0.0);
  auto clipped = dynoco::init(big, box, {0.5});
  CHECK(dynoco::step_ogd(clipped, square_at_zero(), box, big).next[0] == -1.0);
}

TEST_CASE("50-round scalar trajectories match the high-precision reference") {
  check_against_reference(kScalarMAdaGrad, make_cfg(Algorithm::MAdaGrad, 0.5, 0.5), 1.0);
  check_against_reference(kScalarMMAdaGrad, make_cfg(Algorithm::MMAdaGrad, 0.5, 0.3, 3), 1.0);
  check_against_reference(kScalarMMAdaGradBeta0K2, make_cfg(Algorithm::MMAdaGrad, 0.25, 0.0, 2), 2.0);
}

TEST_CASE("beta = 0 m-adagrad equals adagrad bitwise") {
  const auto rounds = random_regression(5, 400);
  const auto ball = FeasibleRegion::centered_ball(5, 2.5);
  const auto m = make_cfg(Algorithm::MAdaGrad, 0.05, 0.0);
  const auto a = make_cfg(Algorithm::AdaGrad, 0.05, 0.9);  // beta is ignored by the baseline
  auto sm = dynoco::init(m, ball, DecisionVector::zeros(5));
  auto sa = dynoco::init(a, ball, DecisionVector::zeros(5));
  for (const auto& f : rounds) {
    const auto om = dynoco::step(sm, f, ball, m);
    const auto oa = dynoco::step(sa, f, ball, a);
    REQUIRE(om.next == oa.next);
    REQUIRE(sm.moments[0].momentum == sa.moments[0].momentum);
    REQUIRE(sm.moments[0].accumulator == sa.moments[0].accumulator);
  }
}

TEST_CASE("mm-adagrad with K = 1 equals m-adagrad") {
  const auto rounds = random_regression(6, 400);
  const auto ball = FeasibleRegion::centered_ball(5, 2.5);
  const auto m = make_cfg(Algorithm::MAdaGrad, 0.02, 0.9);
  const auto mm = make_cfg(Algorithm::MMAdaGrad, 0.02, 0.9, 1);
  auto sm = dynoco::init(m, ball, DecisionVector::zeros(5));
  auto smm = dynoco::init(mm, ball, DecisionVector::zeros(5));
  for (const auto& f : rounds) {
    REQUIRE(dynoco::step(sm, f, ball, m).next == dynoco::step(smm, f, ball, mm).next);
  }
}

TEST_CASE("gradient queries count K per round") {
  const auto rounds = random_regression(7, 250);
  const auto ball = FeasibleRegion::centered_ball(5, 2.5);
  const auto mm = make_cfg(Algorithm::MMAdaGrad, 0.001, 0.9, 10);
  auto state = dynoco::init(mm, ball, DecisionVector::zeros(5));
  REQUIRE(state.moments.size() == 10);
  for (const auto& f : rounds) dynoco::step(state, f, ball, mm);
  CHECK(state.gradient_queries == 2500);
  CHECK(state.round == 250);
}

TEST_CASE("init") {
  const auto ball = FeasibleRegion::centered_ball(2, 1.0);
  const auto cfg = make_cfg(Algorithm::MAdaGrad, 0.1, 0.5);
  const auto state = dynoco::init(cfg, ball, {0.1, 0.2});
  CHECK(state.iterate == DecisionVector{0.1, 0.2});
  REQUIRE(state.moments.size() == 1);
  CHECK(state.moments[0].momentum == DecisionVector::zeros(2));
  CHECK(state.moments[0].accumulator == DecisionVector::zeros(2));
  CHECK(state.round == 0);
  CHECK_THROWS_AS(dynoco::init(cfg, ball, {2.0, 0.0}), dynoco::ContractViolation);
  CHECK_THROWS_AS(dynoco::init(cfg, ball, {0.0, 0.0, 0.0}), dynoco::ContractViolation);
}

TEST_CASE("config validation and parsing") {
  CHECK_THROWS_AS(make_cfg(Algorithm::MAdaGrad, 0.0, 0.5).validate(), dynoco::ConfigurationError);
  CHECK_THROWS_AS(make_cfg(Algorithm::MAdaGrad, 0.1, 1.0).validate(), dynoco::ConfigurationError);
  CHECK_THROWS_AS(make_cfg(Algorithm::MAdaGrad, 0.1, -0.1).validate(), dynoco::ConfigurationError);
  CHECK_THROWS_AS(make_cfg(Algorithm::MMAdaGrad, 0.1, 0.5, 0).validate(), dynoco::ConfigurationError);
  for (auto a : {Algorithm::AdaGrad, Algorithm::MAdaGrad, Algorithm::MMAdaGrad, Algorithm::Ogd}) {
    CHECK(dynoco::parse_algorithm(dynoco::to_string(a)) == a);
  }
  CHECK_THROWS_AS(dynoco::parse_algorithm("adam"), dynoco::ConfigurationError);
}

TEST_CASE("compute_k examples") {
  CHECK(dynoco::compute_k(0.5, 1.0) == 3);
  CHECK(dynoco::compute_k(1.0, 1.0) == 2);
  CHECK(dynoco::compute_k(1.0, 1000.0) == 1);
  CHECK_THROWS_AS(dynoco::compute_k(0.0, 1.0), dynoco::ContractViolation);
  CHECK_THROWS_AS(dynoco::compute_k(1.0, -1.0), dynoco::ContractViolation);
}

TEST_CASE("momentum-norm lemma on recorded trajectories") {
  const auto ball = FeasibleRegion::centered_ball(5, 2.5);
  for (double beta : {0.0, 0.5, 0.9}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto rounds = random_regression(100 + seed, 300);
      const auto cfg = make_cfg(Algorithm::MAdaGrad, 0.01, beta);
      auto state = dynoco::init(cfg, ball, DecisionVector::zeros(5));
      double lhs = 0.0;
      std::vector<double> gsq(5, 0.0);
      for (const auto& f : rounds) {
        const auto out = dynoco::step(state, f, ball, cfg);
        const auto& m = state.moments[0].momentum;
        const auto& v = state.moments[0].accumulator;
        for (std::size_t i = 0; i < 5; ++i) {
          gsq[i] += out.gradients[0][i] * out.gradients[0][i];
          if (v[i] > 0.0) lhs += m[i] * m[i] / std::sqrt(v[i]);
        }
      }
      double rhs = 0.0;
      for (double s : gsq) rhs += std::sqrt(s);
      rhs *= 2.0 / ((1 - beta) * (1 - beta));
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("nonnegative-sum lemma") {
  dynoco::PhiloxStream rng(77, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 200);
    double prefix = 0.0, lhs = 0.0;
    for (int r = 0; r < n; ++r) {
      const double y = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0, 10);
      prefix += y;
      if (prefix > 0.0) lhs += y / std::sqrt(prefix);
    }
    CHECK(lhs <= 2.0 * std::sqrt(prefix) * (1 + 1e-12));
  }
}

TEST_CASE("inner-iteration rule contracts by a quarter") {
  dynoco::PhiloxStream rng(78, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const double lambda = std::exp(rng.uniform(-6, 6));
    const double alpha = rng.uniform(1e-3, 1.0) / lambda;
    const auto k = dynoco::compute_k(alpha, lambda);
    const double sbar = 1 - 2 * lambda / (1 / alpha + lambda);
    CHECK(std::pow(sbar, static_cast<double>(k)) <= 0.25);
    double geo = 0.0;
    for (std::size_t l = 0; l < k; ++l) geo += std::pow(sbar, static_cast<double>(l));
    const double th = 1 / (2 * lambda * alpha) + 0.5;
    CHECK(geo <= th * (1 + 1e-12));
  }
}
