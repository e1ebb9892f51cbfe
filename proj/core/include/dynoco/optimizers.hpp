#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dynoco/environment.hpp"
#include "dynoco/region.hpp"
#include "dynoco/vector.hpp"

namespace dynoco {

enum class Algorithm {
  AdaGrad,     ///< Cumulative-accumulator AdaGrad (momentum-free).
  MAdaGrad,    ///< Momentum AdaGrad.
  MMAdaGrad,   ///< Multiple-momentum AdaGrad: K inner steps per round.
  Ogd,         ///< Projected online gradient descent with constant stepsize.
};

std::string_view to_string(Algorithm algo) noexcept;
/// Accepts "adagrad", "m-adagrad", "mm-adagrad", "ogd"; throws ConfigurationError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::MAdaGrad;
  double alpha = 0.001;
  double beta = 0.9;
  std::size_t inner_iterations = 10;

  /// Throws ConfigurationError unless alpha > 0, 0 <= beta < 1, K >= 1.
  void validate() const;
  /// Decay actually applied: 0 for AdaGrad and OGD.
  [[nodiscard]] double effective_beta() const noexcept;
  /// Gradient queries per round: K for MM-AdaGrad, 1 otherwise.
  [[nodiscard]] std::size_t queries_per_round() const noexcept;
};

/// First and second moment carried by one (inner) update slot.
struct MomentPair {
  DecisionVector momentum;
  DecisionVector accumulator;
};

struct OptimizerState {
  DecisionVector iterate;
  /// One pair for AdaGrad / M-AdaGrad, K pairs for MM-AdaGrad, none for OGD.
  std::vector<MomentPair> moments;
  std::size_t round = 0;
  std::uint64_t gradient_queries = 0;
};

/// What happened inside one round.
struct StepOutcome {
  /// x_t, the point the round's loss is charged at.
  DecisionVector played;
  /// x_{t+1}.
  DecisionVector next;
  /// Gradients in query order: one entry, or K for MM-AdaGrad.
  std::vector<DecisionVector> gradients;
};

/// Zeroed moments and iterate x1. Throws ContractViolation if x1 is outside the region.
OptimizerState init(const OptimizerConfig& cfg, const FeasibleRegion& region, const DecisionVector& x1);

/// m = beta m + (1 - beta) g;  v += g*g;  x <- Pi_{X, v^{1/2}}(x - alpha m / v^{1/2}).
StepOutcome step_m_adagrad(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                           const OptimizerConfig& cfg);

/// Momentum-free baseline: m = g, otherwise as step_m_adagrad.
StepOutcome step_adagrad(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                         const OptimizerConfig& cfg);

/// K inner M-AdaGrad updates per round starting from z^1 = x_t. Inner slot j
/// owns its own (m^j, v^j), which persists across rounds. x_{t+1} = z^{K+1}.
StepOutcome step_mm_adagrad(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                            const OptimizerConfig& cfg);

/// x_{t+1} = Pi_X(x_t - alpha g_t) under the Euclidean norm.
StepOutcome step_ogd(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                     const OptimizerConfig& cfg);

/// Dispatches on cfg.algorithm.
StepOutcome step(OptimizerState& state, const LossRound& round, const FeasibleRegion& region,
                 const OptimizerConfig& cfg);

/// K = ceil((1/alpha + lambda) / (2 lambda) * ln 4), the inner-iteration count
/// that makes the per-round contraction at most 1/4.
std::size_t compute_k(double alpha, double lambda);

}  // namespace dynoco
