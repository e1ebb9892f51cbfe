#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dynoco/environment.hpp"
#include "dynoco/errors.hpp"
#include "dynoco/metrics.hpp"
#include "dynoco/optimizers.hpp"

namespace dynoco {

/// A run hit a degenerate numerical state; `round()` is the 1-based round.
class NumericalAbort : public DegenerateState {
 public:
  NumericalAbort(std::size_t round, const std::string& what);
  [[nodiscard]] std::size_t round() const noexcept { return round_; }

 private:
  std::size_t round_;
};

struct RunConfig {
  OptimizerConfig optimizer;
  EnvironmentConfig environment;
  /// Curvature of the quadratic stream; ignored for regression.
  double lambda = 1.0;
  std::vector<std::uint64_t> seeds = default_seeds();
  /// Rounds at which regret (and bounds) are reported; sorted, within [1, T].
  std::vector<std::size_t> checkpoints;
  /// Empty means no files are written.
  std::filesystem::path output_dir;
  /// gamma for the S*-branch; defaults to L.
  std::optional<double> gamma;

  static std::vector<std::uint64_t> default_seeds();
  /// Defaults: T = 5000, drift every 2000, p = 10, ball radius 2.5, noise
  /// U[0, 0.1], alpha = 0.001, beta = 0.9, K = 10, 10 seeds.
  static RunConfig defaults();

  /// Throws ConfigurationError.
  void validate() const;
  /// {100, 500, 1000, T} clipped to T when `checkpoints` is empty.
  [[nodiscard]] std::vector<std::size_t> resolved_checkpoints() const;
};

/// One row of bounds.csv. Optional fields are blank when the bound does not
/// apply to the run (wrong algorithm, K mismatch, violated hypothesis).
struct BoundRow {
  std::size_t checkpoint = 0;
  double regret = 0.0;
  std::optional<double> thm1_rhs;
  std::optional<double> thm2_branch1;
  std::optional<double> thm2_branch2;
  std::optional<double> thm2_min;
  std::optional<double> gamma_used;
  /// The log-grid gamma minimizing the S*-branch, and that branch value.
  std::optional<double> best_gamma;
  std::optional<double> best_gamma_branch2;

  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

/// Invariant violations counted while stepping.
struct InvariantReport {
  std::size_t infeasible_iterates = 0;
  std::size_t accumulator_decreases = 0;
  std::size_t momentum_envelope_violations = 0;

  [[nodiscard]] bool clean() const noexcept {
    return infeasible_iterates == 0 && accumulator_decreases == 0 && momentum_envelope_violations == 0;
  }
  InvariantReport& operator+=(const InvariantReport& o) noexcept;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

struct RunSummary {
  Algorithm algorithm = Algorithm::MAdaGrad;
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  double final_dynamic_regret = 0.0;
  double static_regret = 0.0;
  std::vector<std::size_t> checkpoints;
  std::vector<double> checkpoint_regret;
  double l1_path_length = 0.0;       ///< C*_T
  double l2_path_length = 0.0;       ///< D*_T
  double squared_path_length = 0.0;  ///< S*_T
  double empirical_g_inf = 0.0;
  std::uint64_t gradient_queries = 0;
  std::vector<BoundRow> bounds;
  InvariantReport invariants;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunResult {
  RegretLedger ledger;
  RunSummary summary;
};

/// Builds the round sequence the run config describes.
std::vector<LossRound> make_environment(const RunConfig& cfg, std::uint64_t seed);

/// Bound rows at each checkpoint of a finished run; empty unless the
/// environment certifies lambda (the quadratic stream).
std::vector<BoundRow> bound_report(const RunConfig& cfg, const RegretLedger& ledger,
                                   const std::vector<LossRound>& rounds, const DecisionVector& x1);

/// Plays T rounds: charge f_t(x_t), then update. Writes trace.csv,
/// summary.csv, bounds.csv and config.txt under output_dir/<algo>/seed_<seed>
/// when output_dir is set.
RunResult run_single(const RunConfig& cfg, std::uint64_t seed);

struct RunCurve {
  RunSummary summary;
  std::vector<double> cumulative_regret;
};

struct SuiteFailure {
  Algorithm algorithm;
  std::uint64_t seed;
  std::string message;
};

struct ComparisonRow {
  Algorithm algorithm;
  std::size_t checkpoint;
  std::size_t runs;
  double median;
  double q1;
  double q3;
};

struct SuiteResult {
  /// Sorted by (algorithm as listed, seed).
  std::vector<RunCurve> runs;
  std::vector<SuiteFailure> failures;
  std::vector<ComparisonRow> table;

  /// Median final regret of an algorithm over its successful runs.
  [[nodiscard]] std::optional<double> median_final(Algorithm algo) const;
  [[nodiscard]] std::optional<double> median_at(Algorithm algo, std::size_t checkpoint) const;
};

/// Runs every (algorithm, seed) pair concurrently. A failing pair is reported
/// in `failures` and does not stop the others. Writes suite_summary.csv and
/// regret_long.csv into output_dir when it is set.
SuiteResult run_suite(const RunConfig& base, const std::vector<Algorithm>& algorithms, unsigned threads = 0);

/// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> sample, double q);

/// Writes the resolved configuration as key=value lines.
void write_config_echo(const std::filesystem::path& path, const RunConfig& cfg, std::uint64_t seed);

}  // namespace dynoco
