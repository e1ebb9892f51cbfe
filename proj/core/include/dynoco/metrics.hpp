#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "dynoco/environment.hpp"
#include "dynoco/region.hpp"
#include "dynoco/vector.hpp"

namespace dynoco {

struct RoundRecord {
  std::size_t t = 0;
  double loss = 0.0;             ///< f_t(x_t)
  double comparator_loss = 0.0;  ///< f_t(x*_t)
  DecisionVector comparator;
  /// Gradients queried this round, in inner order (one unless MM-AdaGrad).
  std::vector<DecisionVector> gradients;
};

/// Per-round trace of a run. Rounds are appended in order 1, 2, ..., T.
class RegretLedger {
 public:
  RegretLedger() = default;

  /// Throws ContractViolation on a gap in t, a change in dimension or in the
  /// number of gradients per round, and DegenerateState on non-finite losses.
  void append(RoundRecord record);

  [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
  [[nodiscard]] bool empty() const noexcept { return records_.empty(); }
  [[nodiscard]] const std::vector<RoundRecord>& records() const noexcept { return records_; }
  [[nodiscard]] const RoundRecord& operator[](std::size_t i) const noexcept { return records_[i]; }
  [[nodiscard]] std::size_t dimension() const noexcept;
  /// Gradients stored per round (K for MM-AdaGrad).
  [[nodiscard]] std::size_t inner_count() const noexcept;

  /// Copy of the first n rounds.
  [[nodiscard]] RegretLedger prefix(std::size_t n) const;

  [[nodiscard]] std::vector<DecisionVector> comparators() const;

  /// v^j after `rounds` rounds: sum of squared gradients of inner slot j.
  [[nodiscard]] DecisionVector accumulator(std::size_t inner, std::size_t rounds) const;
  /// Coordinatewise max over inner slots of accumulator(j, rounds).
  [[nodiscard]] DecisionVector max_accumulator(std::size_t rounds) const;

 private:
  std::vector<RoundRecord> records_;
};

/// Sum_t f_t(x_t) - f_t(x*_t). Throws ContractViolation on an empty ledger.
double dynamic_regret(const RegretLedger& ledger);

/// Running dynamic regret after each round.
std::vector<double> cumulative_dynamic_regret(const RegretLedger& ledger);

/// Sum_t f_t(x_t) - comparator_losses[t].
double static_regret(const RegretLedger& ledger, std::span<const double> comparator_losses);

struct CoordinateTotals {
  std::vector<double> per_coordinate;
  double total = 0.0;
};

/// C*_{T,i} = sum_t |x*_{t+1,i} - x*_{t,i}| and their sum.
CoordinateTotals path_length_l1(std::span<const DecisionVector> comparators);
/// D*_T = sum_t ||x*_{t+1} - x*_t||_2.
double path_length_l2(std::span<const DecisionVector> comparators);
/// S*_{T,i} = sum_t (x*_{t+1,i} - x*_{t,i})^2 and their sum.
CoordinateTotals squared_path_length(std::span<const DecisionVector> comparators);

struct GradientNorms {
  /// ||g_{1:T,i}|| for the first (or only) gradient of each round.
  CoordinateTotals first;
  /// One entry per inner slot j.
  std::vector<CoordinateTotals> per_inner;
  /// Coordinatewise max over inner slots (equals `first` when K = 1).
  CoordinateTotals max_over_inner;
  /// max_t ||g_t||_inf over every recorded gradient.
  double sup_inf_norm = 0.0;
};

GradientNorms gradient_history_norms(const RegretLedger& ledger);

/// Minimizer over the region of (1/T) sum_t f_t, by projected gradient descent
/// on the aggregated quadratic until the gradient-mapping norm is <= 1e-10.
DecisionVector best_fixed_comparator(std::span<const LossRound> rounds, const FeasibleRegion& region);

/// Header: t,loss,comparator_loss,inst_regret,cum_dynamic_regret.
void write_trace_csv(const std::filesystem::path& path, const RegretLedger& ledger);

/// Full ledger dump: losses, comparator coordinates and every gradient.
void write_ledger_csv(const std::filesystem::path& path, const RegretLedger& ledger);
RegretLedger read_ledger_csv(const std::filesystem::path& path);

}  // namespace dynoco
