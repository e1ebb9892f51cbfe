#include "dynoco/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "dynoco/bounds.hpp"
#include "dynoco/csv.hpp"

namespace dynoco {

NumericalAbort::NumericalAbort(std::size_t round, const std::string& what)
    : DegenerateState("numerical abort at round " + std::to_string(round) + ": " + what), round_(round) {}

InvariantReport& InvariantReport::operator+=(const InvariantReport& o) noexcept {
  infeasible_iterates += o.infeasible_iterates;
  accumulator_decreases += o.accumulator_decreases;
  momentum_envelope_violations += o.momentum_envelope_violations;
  return *this;
}

std::vector<std::uint64_t> RunConfig::default_seeds() { return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}; }

RunConfig RunConfig::defaults() { return RunConfig{}; }

void RunConfig::validate() const {
  optimizer.validate();
  environment.validate();
  if (environment.kind == LossKind::StronglyConvexQuadratic && (!(lambda > 0.0) || !std::isfinite(lambda))) {
    detail::throw_config("run: lambda must be > 0 for the quadratic environment");
  }
  if (environment.kind == LossKind::SquareRegression && !environment.region.as_ball()) {
    detail::throw_config("run: the regression environment samples models from a ball region");
  }
  if (seeds.empty()) detail::throw_config("run: at least one seed is required");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) detail::throw_config("run: checkpoints must be sorted");
  for (std::size_t c : checkpoints) {
    if (c < 1 || c > environment.horizon) detail::throw_config("run: checkpoint outside [1, T]");
  }
  if (gamma && !(*gamma > 0.0)) detail::throw_config("run: gamma must be > 0");
}

std::vector<std::size_t> RunConfig::resolved_checkpoints() const {
  if (!checkpoints.empty()) return checkpoints;
  std::vector<std::size_t> out;
  for (std::size_t c : {std::size_t{100}, std::size_t{500}, std::size_t{1000}, environment.horizon}) {
    if (c <= environment.horizon && (out.empty() || out.back() < c)) out.push_back(c);
  }
  return out;
}

std::vector<LossRound> make_environment(const RunConfig& cfg, std::uint64_t seed) {
  EnvironmentConfig env = cfg.environment;
  env.seed = seed;
  if (env.kind == LossKind::SquareRegression) return make_drifting_regression(env);
  return make_strongly_convex_stream(env, cfg.lambda);
}

std::vector<BoundRow> bound_report(const RunConfig& cfg, const RegretLedger& ledger,
                                   const std::vector<LossRound>& rounds, const DecisionVector& x1) {
  std::vector<BoundRow> rows;
  if (cfg.environment.kind != LossKind::StronglyConvexQuadratic || ledger.empty()) return rows;

  const auto& opt = cfg.optimizer;
  const double smooth = rounds.front().smoothness();
  const std::vector<double> cumulative = cumulative_dynamic_regret(ledger);
  const std::vector<DecisionVector> comparators = ledger.comparators();

  double comparator_grad_sq = 0.0;
  std::size_t summed = 0;
  for (std::size_t checkpoint : cfg.resolved_checkpoints()) {
    if (checkpoint > ledger.size()) break;
    for (; summed < checkpoint; ++summed) {
      const DecisionVector g = rounds[summed].gradient(rounds[summed].comparator());
      comparator_grad_sq += dot(g, g);
    }
    const std::span<const DecisionVector> prefix(comparators.data(), checkpoint);
    const RegretLedger head = ledger.prefix(checkpoint);

    BoundInputs in;
    in.alpha = opt.alpha;
    in.beta = opt.effective_beta();
    in.lambda = cfg.lambda;
    in.smoothness = smooth;
    in.diameter_inf = cfg.environment.region.diameter_inf();
    in.accumulator_first = ledger.max_accumulator(1);
    in.accumulator_last = ledger.max_accumulator(checkpoint);
    in.l1_regularity = path_length_l1(prefix).per_coordinate;
    in.squared_regularity = squared_path_length(prefix).per_coordinate;
    in.gradient_norms = gradient_history_norms(head).max_over_inner.per_coordinate;
    in.x_first = x1;
    in.comparator_first = comparators.front();
    in.inner_iterations = ledger.inner_count();
    in.gamma = cfg.gamma.value_or(smooth);
    in.comparator_gradient_sq_sum = comparator_grad_sq;

    BoundRow row;
    row.checkpoint = checkpoint;
    row.regret = cumulative[checkpoint - 1];
    try {
      if (opt.algorithm == Algorithm::MAdaGrad || opt.algorithm == Algorithm::AdaGrad) {
        row.thm1_rhs = theorem1_rhs(in).rhs;
      } else if (opt.algorithm == Algorithm::MMAdaGrad) {
        const Theorem2Bound b = theorem2_rhs(in);
        row.thm2_branch1 = b.branch1;
        row.thm2_branch2 = b.branch2;
        row.thm2_min = b.min;
        row.gamma_used = in.gamma;
        const GammaChoice best = best_gamma_for_branch2(in);
        row.best_gamma = best.gamma;
        row.best_gamma_branch2 = best.bound.branch2;
      }
    } catch (const BoundInapplicable&) {
      // Reported as blank columns.
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Slack for the momentum envelope; the EMA is exact in real arithmetic, so
// only rounding can push |m| past (1 - beta^t) max|g|.
constexpr double kEnvelopeRelTol = 1e-12;

class InvariantMonitor {
 public:
  InvariantMonitor(const OptimizerConfig& cfg, const OptimizerState& state)
      : beta_(cfg.effective_beta()),
        max_abs_grad_(state.moments.size(), std::vector<double>(state.iterate.size(), 0.0)),
        previous_(state.moments) {}

  void observe(const OptimizerState& state, const StepOutcome& out, const FeasibleRegion& region,
               InvariantReport& report) {
    if (!region.contains(out.next)) ++report.infeasible_iterates;
    beta_pow_ *= beta_;
    for (std::size_t j = 0; j < state.moments.size(); ++j) {
      const auto& pair = state.moments[j];
      const auto& g = out.gradients[j];
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (pair.accumulator[i] < previous_[j].accumulator[i]) ++report.accumulator_decreases;
        max_abs_grad_[j][i] = std::max(max_abs_grad_[j][i], std::fabs(g[i]));
        const double envelope = (1.0 - beta_pow_) * max_abs_grad_[j][i];
        if (std::fabs(pair.momentum[i]) > envelope + kEnvelopeRelTol * max_abs_grad_[j][i]) {
          ++report.momentum_envelope_violations;
        }
      }
    }
    previous_ = state.moments;
  }

 private:
  double beta_;
  double beta_pow_ = 1.0;
  std::vector<std::vector<double>> max_abs_grad_;
  std::vector<MomentPair> previous_;
};

std::filesystem::path run_directory(const RunConfig& cfg, Algorithm algo, std::uint64_t seed) {
  return cfg.output_dir / std::string(to_string(algo)) / ("seed_" + std::to_string(seed));
}

void write_summary_csv(const std::filesystem::path& path, const RunSummary& s) {
  CsvWriter csv(path, {"algorithm", "seed", "horizon", "final_dynamic_regret", "static_regret", "C_star",
                       "D_star", "S_star", "G_inf", "gradient_queries", "infeasible_iterates",
                       "accumulator_decreases", "momentum_envelope_violations"});
  csv.cell(to_string(s.algorithm))
      .cell(static_cast<unsigned long long>(s.seed))
      .cell(s.horizon)
      .cell(s.final_dynamic_regret)
      .cell(s.static_regret)
      .cell(s.l1_path_length)
      .cell(s.l2_path_length)
      .cell(s.squared_path_length)
      .cell(s.empirical_g_inf)
      .cell(static_cast<unsigned long long>(s.gradient_queries))
      .cell(s.invariants.infeasible_iterates)
      .cell(s.invariants.accumulator_decreases)
      .cell(s.invariants.momentum_envelope_violations);
  csv.end_row();
}

void write_bounds_csv(const std::filesystem::path& path, const std::vector<BoundRow>& rows) {
  CsvWriter csv(path, {"T'", "regret", "thm1_rhs", "thm2_branch1", "thm2_branch2", "thm2_min", "gamma_used"});
  auto opt = [&csv](const std::optional<double>& v) {
    if (v) {
      csv.cell(*v);
    } else {
      csv.blank();
    }
  };
  for (const auto& r : rows) {
    csv.cell(r.checkpoint).cell(r.regret);
    opt(r.thm1_rhs);
    opt(r.thm2_branch1);
    opt(r.thm2_branch2);
    opt(r.thm2_min);
    opt(r.gamma_used);
    csv.end_row();
  }
}

}  // namespace

void write_config_echo(const std::filesystem::path& path, const RunConfig& cfg, std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  const auto& env = cfg.environment;
  const auto& opt = cfg.optimizer;
  out << "algorithm=" << to_string(opt.algorithm) << '\n'
      << "alpha=" << format_double(opt.alpha) << '\n'
      << "beta=" << format_double(opt.beta) << '\n'
      << "inner_k=" << opt.inner_iterations << '\n'
      << "env=" << (env.kind == LossKind::SquareRegression ? "regression" : "quadratic") << '\n'
      << "lambda=" << format_double(cfg.lambda) << '\n'
      << "horizon=" << env.horizon << '\n'
      << "dim=" << env.dimension << '\n'
      << "drift_every=" << env.drift_every << '\n'
      << "region=" << (env.region.kind() == FeasibleRegion::Kind::Ball ? "ball" : "box") << '\n'
      << "diameter_inf=" << format_double(env.region.diameter_inf()) << '\n'
      << "noise_lo=" << format_double(env.noise_lo) << '\n'
      << "noise_hi=" << format_double(env.noise_hi) << '\n'
      << "seed=" << seed << '\n';
  out << "checkpoints=";
  const auto cps = cfg.resolved_checkpoints();
  for (std::size_t i = 0; i < cps.size(); ++i) out << (i ? "," : "") << cps[i];
  out << '\n';
  if (cfg.gamma) out << "gamma=" << format_double(*cfg.gamma) << '\n';
}

RunResult run_single(const RunConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::vector<LossRound> rounds = make_environment(cfg, seed);
  const FeasibleRegion& region = cfg.environment.region;
  const DecisionVector x1 = region.center();
  OptimizerState state = init(cfg.optimizer, region, x1);
  InvariantMonitor monitor(cfg.optimizer, state);

  RunResult result;
  RunSummary& s = result.summary;
  for (std::size_t t = 1; t <= rounds.size(); ++t) {
    const LossRound& round = rounds[t - 1];
    try {
      RoundRecord rec;
      rec.t = t;
      rec.loss = round.value(state.iterate);
      rec.comparator_loss = round.value(round.comparator());
      rec.comparator = round.comparator();
      StepOutcome out = step(state, round, region, cfg.optimizer);
      monitor.observe(state, out, region, s.invariants);
      rec.gradients = std::move(out.gradients);
      result.ledger.append(std::move(rec));
    } catch (const DegenerateState& e) {
      throw NumericalAbort(t, e.what());
    }
  }

  s.algorithm = cfg.optimizer.algorithm;
  s.seed = seed;
  s.horizon = rounds.size();
  const std::vector<double> cumulative = cumulative_dynamic_regret(result.ledger);
  s.final_dynamic_regret = cumulative.back();
  s.checkpoints = cfg.resolved_checkpoints();
  for (std::size_t c : s.checkpoints) s.checkpoint_regret.push_back(cumulative[c - 1]);

  const DecisionVector best = best_fixed_comparator(rounds, region);
  std::vector<double> fixed_losses;
  fixed_losses.reserve(rounds.size());
  for (const auto& r : rounds) fixed_losses.push_back(r.value(best));
  s.static_regret = static_regret(result.ledger, fixed_losses);

  const std::vector<DecisionVector> comparators = result.ledger.comparators();
  s.l1_path_length = path_length_l1(comparators).total;
  s.l2_path_length = path_length_l2(comparators);
  s.squared_path_length = squared_path_length(comparators).total;
  s.empirical_g_inf = gradient_history_norms(result.ledger).sup_inf_norm;
  s.gradient_queries = state.gradient_queries;
  s.bounds = bound_report(cfg, result.ledger, rounds, x1);

  if (!cfg.output_dir.empty()) {
    const auto dir = run_directory(cfg, s.algorithm, seed);
    std::filesystem::create_directories(dir);
    write_trace_csv(dir / "trace.csv", result.ledger);
    write_summary_csv(dir / "summary.csv", s);
    if (!s.bounds.empty()) write_bounds_csv(dir / "bounds.csv", s.bounds);
    write_config_echo(dir / "config.txt", cfg, seed);
  }
  return result;
}

double quantile(std::vector<double> sample, double q) {
  if (sample.empty()) detail::throw_contract("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) detail::throw_contract("quantile: q outside [0, 1]");
  std::sort(sample.begin(), sample.end());
  const double pos = q * static_cast<double>(sample.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (pos - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

std::optional<double> SuiteResult::median_at(Algorithm algo, std::size_t checkpoint) const {
  for (const auto& row : table) {
    if (row.algorithm == algo && row.checkpoint == checkpoint) return row.median;
  }
  return std::nullopt;
}

std::optional<double> SuiteResult::median_final(Algorithm algo) const {
  std::vector<double> finals;
  for (const auto& r : runs) {
    if (r.summary.algorithm == algo) finals.push_back(r.summary.final_dynamic_regret);
  }
  if (finals.empty()) return std::nullopt;
  return quantile(std::move(finals), 0.5);
}

SuiteResult run_suite(const RunConfig& base, const std::vector<Algorithm>& algorithms, unsigned threads) {
  base.validate();
  if (algorithms.empty()) detail::throw_config("suite: at least one algorithm is required");
  std::vector<std::uint64_t> seeds = base.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  struct Job {
    Algorithm algorithm;
    std::uint64_t seed;
    std::optional<RunCurve> curve;
    std::string error;
  };
  std::vector<Job> jobs;
  for (Algorithm a : algorithms) {
    for (std::uint64_t seed : seeds) jobs.push_back({a, seed, std::nullopt, {}});
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      Job& job = jobs[i];
      RunConfig cfg = base;
      cfg.optimizer.algorithm = job.algorithm;
      try {
        RunResult r = run_single(cfg, job.seed);
        job.curve = RunCurve{std::move(r.summary), cumulative_dynamic_regret(r.ledger)};
      } catch (const std::exception& e) {
        job.error = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  SuiteResult result;
  for (auto& job : jobs) {
    if (job.curve) {
      result.runs.push_back(std::move(*job.curve));
    } else {
      result.failures.push_back({job.algorithm, job.seed, job.error});
    }
  }

  const auto checkpoints = base.resolved_checkpoints();
  for (Algorithm a : algorithms) {
    for (std::size_t c : checkpoints) {
      std::vector<double> sample;
      for (const auto& r : result.runs) {
        if (r.summary.algorithm == a) sample.push_back(r.cumulative_regret[c - 1]);
      }
      if (sample.empty()) continue;
      result.table.push_back({a, c, sample.size(), quantile(sample, 0.5), quantile(sample, 0.25),
                              quantile(sample, 0.75)});
    }
  }

  if (!base.output_dir.empty()) {
    std::filesystem::create_directories(base.output_dir);
    CsvWriter summary(base.output_dir / "suite_summary.csv",
                      {"algorithm", "checkpoint", "runs", "median_cum_regret", "q1_cum_regret", "q3_cum_regret"});
    for (const auto& row : result.table) {
      summary.cell(to_string(row.algorithm)).cell(row.checkpoint).cell(row.runs).cell(row.median).cell(row.q1).cell(
          row.q3);
      summary.end_row();
    }
    CsvWriter long_form(base.output_dir / "regret_long.csv", {"round", "algorithm", "seed", "cum_regret"});
    for (const auto& r : result.runs) {
      for (std::size_t t = 0; t < r.cumulative_regret.size(); ++t) {
        long_form.cell(t + 1)
            .cell(to_string(r.summary.algorithm))
            .cell(static_cast<unsigned long long>(r.summary.seed))
            .cell(r.cumulative_regret[t]);
        long_form.end_row();
      }
    }
    if (!result.failures.empty()) {
      CsvWriter failures(base.output_dir / "failures.csv", {"algorithm", "seed", "message"});
      for (const auto& f : result.failures) {
        std::string msg = f.message;
        std::replace(msg.begin(), msg.end(), ',', ';');
        failures.cell(to_string(f.algorithm)).cell(static_cast<unsigned long long>(f.seed)).cell(msg);
        failures.end_row();
      }
    }
  }
  return result;
}

}  // namespace dynoco
