// dynoco: run seeded online-learning experiments on drifting environments.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical abort.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynoco/environment.hpp"
#include "dynoco/errors.hpp"
#include "dynoco/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s.front() == '-') {
    throw dynoco::ConfigurationError(std::string("invalid ") + what + " '" + s + "'");
  }
  return v;
}

// "a,b,c" is an explicit list; a bare integer N means seeds 0..N-1.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  if (text.find(',') != std::string::npos) {
    for (const auto& s : split(text)) seeds.push_back(parse_u64(s, "seed"));
  } else {
    const std::uint64_t count = parse_u64(text, "seed count");
    for (std::uint64_t s = 0; s < count; ++s) seeds.push_back(s);
  }
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online convex optimization on non-stationary environments: AdaGrad-type learners, "
               "dynamic regret and bound reports"};

  std::string algos = "m-adagrad";
  std::string env_kind = "regression";
  std::string seeds_text = "10";
  std::string checkpoints_text;
  std::string out_dir;
  std::string dump_env;
  dynoco::RunConfig cfg = dynoco::RunConfig::defaults();
  double radius = 2.5;
  double gamma = 0.0;
  unsigned threads = 0;

  app.add_option("--algo", algos, "adagrad|m-adagrad|mm-adagrad|ogd, or a comma list for a suite")
      ->capture_default_str();
  app.add_option("--alpha", cfg.optimizer.alpha, "Stepsize")->capture_default_str();
  app.add_option("--beta", cfg.optimizer.beta, "Momentum decay in [0, 1)")->capture_default_str();
  app.add_option("--inner-k", cfg.optimizer.inner_iterations, "Inner iterations K (mm-adagrad)")
      ->capture_default_str();
  app.add_option("--horizon", cfg.environment.horizon, "Number of rounds T")->capture_default_str();
  app.add_option("--dim", cfg.environment.dimension, "Dimension p")->capture_default_str();
  app.add_option("--drift-every", cfg.environment.drift_every, "Rounds per comparator segment")
      ->capture_default_str();
  app.add_option("--radius", radius, "Radius of the centered feasible ball")->capture_default_str();
  app.add_option("--env", env_kind, "regression|quadratic")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "Curvature of the quadratic environment")->capture_default_str();
  app.add_option("--noise-lo", cfg.environment.noise_lo, "Lower end of the label noise range")
      ->capture_default_str();
  app.add_option("--noise-hi", cfg.environment.noise_hi, "Upper end of the label noise range")
      ->capture_default_str();
  app.add_option("--seeds", seeds_text, "Comma list of seeds, or a count N for seeds 0..N-1")
      ->capture_default_str();
  app.add_option("--checkpoints", checkpoints_text, "Comma list of report rounds (default 100,500,1000,T)");
  app.add_option("--out", out_dir, "Output directory for CSV traces and summaries");
  app.add_option("--gamma", gamma, "gamma for the S*-branch of the multi-step bound (default L)");
  app.add_option("--threads", threads, "Worker threads for the suite (0 = hardware concurrency)");
  app.add_option("--dump-env", dump_env, "Write the first seed's comparator sequence to this CSV and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    std::vector<dynoco::Algorithm> algorithms;
    for (const auto& a : split(algos)) algorithms.push_back(dynoco::parse_algorithm(a));
    if (algorithms.empty()) throw dynoco::ConfigurationError("--algo is empty");
    cfg.optimizer.algorithm = algorithms.front();

    if (env_kind == "regression") {
      cfg.environment.kind = dynoco::LossKind::SquareRegression;
    } else if (env_kind == "quadratic") {
      cfg.environment.kind = dynoco::LossKind::StronglyConvexQuadratic;
    } else {
      throw dynoco::ConfigurationError("--env must be regression or quadratic");
    }
    if (cfg.environment.dimension < 1) throw dynoco::ConfigurationError("--dim must be >= 1");
    if (!(radius > 0.0)) throw dynoco::ConfigurationError("--radius must be > 0");
    cfg.environment.region = dynoco::FeasibleRegion::centered_ball(cfg.environment.dimension, radius);
    cfg.seeds = parse_seeds(seeds_text);
    for (const auto& c : split(checkpoints_text)) {
      cfg.checkpoints.push_back(static_cast<std::size_t>(parse_u64(c, "checkpoint")));
    }
    if (app.count("--gamma")) cfg.gamma = gamma;
    cfg.output_dir = out_dir;
    cfg.validate();

    if (!dump_env.empty()) {
      const auto rounds = dynoco::make_environment(cfg, cfg.seeds.front());
      dynoco::EnvironmentConfig env = cfg.environment;
      env.seed = cfg.seeds.front();
      dynoco::write_environment_csv(dump_env, env, rounds);
      return 0;
    }

    const dynoco::SuiteResult result = dynoco::run_suite(cfg, algorithms, threads);

    std::printf("%-12s %10s %6s %16s %16s %16s\n", "algorithm", "checkpoint", "runs", "median", "q1", "q3");
    for (const auto& row : result.table) {
      std::printf("%-12s %10zu %6zu %16.6f %16.6f %16.6f\n", std::string(dynoco::to_string(row.algorithm)).c_str(),
                  row.checkpoint, row.runs, row.median, row.q1, row.q3);
    }
    for (const auto& f : result.failures) {
      std::fprintf(stderr, "run %s seed %llu failed: %s\n", std::string(dynoco::to_string(f.algorithm)).c_str(),
                   static_cast<unsigned long long>(f.seed), f.message.c_str());
    }
    return result.failures.empty() ? 0 : kExitNumerical;
  } catch (const dynoco::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dynoco::ContractViolation& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dynoco::DegenerateState& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
