#include "dynoco/optimizers.hpp"

#include <cmath>
#include <string>

#include "dynoco/errors.hpp"

namespace dynoco {

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::AdaGrad:
      return "adagrad";
    case Algorithm::MAdaGrad:
      return "m-adagrad";
    case Algorithm::MMAdaGrad:
      return "mm-adagrad";
    case Algorithm::Ogd:
      return "ogd";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::AdaGrad, Algorithm::MAdaGrad, Algorithm::MMAdaGrad, Algorithm::Ogd}) {
    if (to_string(a) == name) return a;
  }
  detail::throw_config("unknown algorithm '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) detail::throw_config("optimizer: alpha must be > 0");
  if (!(beta >= 0.0 && beta < 1.0)) detail::throw_config("optimizer: beta must lie in [0, 1)");
  if (inner_iterations < 1) detail::throw_config("optimizer: inner iterations K must be >= 1");
}

double OptimizerConfig::effective_beta() const noexcept {
  return (algorithm == Algorithm::MAdaGrad || algorithm == Algorithm::MMAdaGrad) ? beta : 0.0;
}

std::size_t OptimizerConfig::queries_per_round() const noexcept {
  return algorithm == Algorithm::MMAdaGrad ? inner_iterations : 1;
}

OptimizerState init(const OptimizerConfig& cfg, const FeasibleRegion& region, const DecisionVector& x1) {
  cfg.validate();
  if (x1.size() != region.dimension()) detail::throw_contract("init: x1 dimension does not match region");
  if (!region.contains(x1)) detail::throw_contract("init: x1 lies outside the feasible region");

  std::size_t slots = 0;
  switch (cfg.algorithm) {
    case Algorithm::AdaGrad:
    case Algorithm::MAdaGrad:
      slots = 1;
      break;
    case Algorithm::MMAdaGrad:
      slots = cfg.inner_iterations;
      break;
    case Algorithm::Ogd:
      slots = 0;
      break;
  }
  const auto zero = DecisionVector::zeros(x1.size());
  OptimizerState state{x1, std::vector<MomentPair>(slots, MomentPair{zero, zero}), 0, 0};
  return state;
}

namespace {

enum class Momentum { Ema, None };

void require_ready(const OptimizerState& state, const LossRound& round, std::size_t slots) {
  if (state.iterate.empty()) detail::throw_contract("step: state is not initialized");
  if (round.dimension() != state.iterate.size()) detail::throw_contract("step: round dimension mismatch");
  if (state.moments.size() < slots) detail::throw_contract("step: state has too few moment slots");
}

// One adaptive update from z using slot `pair`; returns the projected point.
DecisionVector adaptive_update(const DecisionVector& z, const DecisionVector& g, MomentPair& pair,
                               Momentum momentum, double beta, double alpha, const FeasibleRegion& region) {
  pair.momentum = momentum == Momentum::Ema ? beta * pair.momentum + (1.0 - beta) * g : g;
  pair.accumulator = pair.accumulator + square(g);
  const DecisionVector scale = sqrt(pair.accumulator);
  const DecisionVector direction = divide(pair.momentum, scale);
  return region.project_weighted(scale, axpy(z, -alpha, direction));
}

StepOutcome single_slot_step(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                             const OptimizerConfig& cfg, Momentum momentum) {
  require_ready(state, round, 1);
  StepOutcome out{state.iterate, {}, {}};
  DecisionVector g = round.gradient(state.iterate);
  ++state.gradient_queries;
  state.iterate = adaptive_update(state.iterate, g, state.moments.front(), momentum, cfg.beta, cfg.alpha, region);
  ++state.round;
  out.next = state.iterate;
  out.gradients.push_back(std::move(g));
  return out;
}

}  // namespace

StepOutcome step_m_adagrad(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                           const OptimizerConfig& cfg) {
  return single_slot_step(state, round, region, cfg, Momentum::Ema);
}

StepOutcome step_adagrad(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                         const OptimizerConfig& cfg) {
  return single_slot_step(state, round, region, cfg, Momentum::None);
}

StepOutcome step_mm_adagrad(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                            const OptimizerConfig& cfg) {
  const std::size_t k = cfg.inner_iterations;
  require_ready(state, round, k);
  StepOutcome out{state.iterate, {}, {}};
  out.gradients.reserve(k);
  DecisionVector z = state.iterate;
  for (std::size_t j = 0; j < k; ++j) {
    DecisionVector g = round.gradient(z);
    ++state.gradient_queries;
    z = adaptive_update(z, g, state.moments[j], Momentum::Ema, cfg.beta, cfg.alpha, region);
    out.gradients.push_back(std::move(g));
  }
  state.iterate = std::move(z);
  ++state.round;
  out.next = state.iterate;
  return out;
}

StepOutcome step_ogd(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                     const OptimizerConfig& cfg) {
  require_ready(state, round, 0);
  StepOutcome out{state.iterate, {}, {}};
  DecisionVector g = round.gradient(state.iterate);
  ++state.gradient_queries;
  state.iterate = region.project(axpy(state.iterate, -cfg.alpha, g));
  ++state.round;
  out.next = state.iterate;
  out.gradients.push_back(std::move(g));
  return out;
}

StepOutcome step(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                 const OptimizerConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::AdaGrad:
      return step_adagrad(state, round, region, cfg);
    case Algorithm::MAdaGrad:
      return step_m_adagrad(state, round, region, cfg);
    case Algorithm::MMAdaGrad:
      return step_mm_adagrad(state, round, region, cfg);
    case Algorithm::Ogd:
      return step_ogd(state, round, region, cfg);
  }
  detail::throw_contract("step: unknown algorithm");
}

std::size_t compute_k(double alpha, double lambda) {
  if (!(alpha > 0.0) || !(lambda > 0.0)) detail::throw_contract("compute_k: alpha and lambda must be > 0");
  const double k = std::ceil((1.0 / alpha + lambda) / (2.0 * lambda) * std::log(4.0));
  return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

}  // namespace dynoco
