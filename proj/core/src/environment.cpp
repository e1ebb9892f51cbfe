#include "dynoco/environment.hpp"

#include <cmath>
#include <string>

#include "dynoco/csv.hpp"
#include "dynoco/errors.hpp"

namespace dynoco {

LossRound LossRound::square_regression(DecisionVector feature, double label, DecisionVector comparator) {
  require_same_dim(feature, comparator, "LossRound::square_regression");
  if (!std::isfinite(label)) detail::throw_degenerate("LossRound: non-finite label");
  const double smooth = dot(feature, feature);
  return LossRound(LossKind::SquareRegression, std::move(feature), label, std::move(comparator), smooth);
}

LossRound LossRound::quadratic(DecisionVector center, double curvature, DecisionVector comparator) {
  require_same_dim(center, comparator, "LossRound::quadratic");
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    detail::throw_config("LossRound::quadratic: curvature must be positive");
  }
  return LossRound(LossKind::StronglyConvexQuadratic, std::move(center), curvature, std::move(comparator),
                   curvature);
}

std::optional<double> LossRound::strong_convexity() const noexcept {
  if (kind_ == LossKind::StronglyConvexQuadratic) return scalar_;
  return std::nullopt;
}

double LossRound::value(const DecisionVector& x) const {
  if (kind_ == LossKind::SquareRegression) {
    const double r = dot(vec_, x) - scalar_;
    return 0.5 * r * r;
  }
  const DecisionVector d = x - vec_;
  return 0.5 * scalar_ * dot(d, d);
}

DecisionVector LossRound::gradient(const DecisionVector& x) const {
  if (kind_ == LossKind::SquareRegression) {
    const double r = dot(vec_, x) - scalar_;
    return r * vec_;
  }
  return scalar_ * (x - vec_);
}

void EnvironmentConfig::validate() const {
  if (dimension < 1) detail::throw_config("environment: dimension must be >= 1");
  if (horizon < 1) detail::throw_config("environment: horizon must be >= 1");
  if (drift_every < 1 || drift_every > horizon) {
    detail::throw_config("environment: drift_every must lie in [1, horizon]");
  }
  if (!(noise_lo <= noise_hi) || !std::isfinite(noise_lo) || !std::isfinite(noise_hi)) {
    detail::throw_config("environment: noise range must satisfy lo <= hi");
  }
  if (region.dimension() != dimension) {
    detail::throw_config("environment: region dimension " + std::to_string(region.dimension()) +
                         " does not match p = " + std::to_string(dimension));
  }
}

std::size_t segment_count(const EnvironmentConfig& cfg) {
  return (cfg.horizon + cfg.drift_every - 1) / cfg.drift_every;
}

std::size_t segment_of(const EnvironmentConfig& cfg, std::size_t t) { return (t - 1) / cfg.drift_every; }

DecisionVector sample_uniform_ball(const FeasibleRegion::Ball& ball, PhiloxStream& rng) {
  const std::size_t p = ball.center.size();
  std::vector<double> dir(p);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& d : dir) {
      d = rng.normal();
      norm += d * d;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  const double radius = ball.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(p));
  for (std::size_t i = 0; i < p; ++i) dir[i] = ball.center[i] + radius * dir[i] / norm;
  return DecisionVector(std::move(dir));
}

namespace {

DecisionVector sample_uniform_region(const FeasibleRegion& region, PhiloxStream& rng) {
  if (const auto* ball = region.as_ball()) return sample_uniform_ball(*ball, rng);
  const auto& box = *region.as_box();
  std::vector<double> x(box.lower.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(box.lower[i], box.upper[i]);
  return DecisionVector(std::move(x));
}

}  // namespace

std::vector<LossRound> make_drifting_regression(const EnvironmentConfig& cfg) {
  cfg.validate();
  if (cfg.kind != LossKind::SquareRegression) {
    detail::throw_config("make_drifting_regression: config kind must be square regression");
  }
  const auto* ball = cfg.region.as_ball();
  if (!ball) detail::throw_config("make_drifting_regression: models are sampled from a ball region");

  PhiloxStream model_rng = make_stream(cfg.seed, StreamRole::Models);
  PhiloxStream feature_rng = make_stream(cfg.seed, StreamRole::Features);
  PhiloxStream noise_rng = make_stream(cfg.seed, StreamRole::Noise);

  std::vector<DecisionVector> models;
  models.reserve(segment_count(cfg));
  for (std::size_t s = 0; s < segment_count(cfg); ++s) models.push_back(sample_uniform_ball(*ball, model_rng));

  std::vector<LossRound> rounds;
  rounds.reserve(cfg.horizon);
  std::vector<double> a(cfg.dimension);
  for (std::size_t t = 1; t <= cfg.horizon; ++t) {
    const DecisionVector& model = models[segment_of(cfg, t)];
    for (auto& e : a) e = feature_rng.normal();
    DecisionVector feature(a);
    const double eps = noise_rng.uniform(cfg.noise_lo, cfg.noise_hi);
    const double label = dot(feature, model) + eps;
    rounds.push_back(LossRound::square_regression(std::move(feature), label, model));
  }
  return rounds;
}

std::vector<LossRound> make_strongly_convex_stream(const EnvironmentConfig& cfg, double curvature) {
  cfg.validate();
  if (cfg.kind != LossKind::StronglyConvexQuadratic) {
    detail::throw_config("make_strongly_convex_stream: config kind must be strongly convex quadratic");
  }
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    detail::throw_config("make_strongly_convex_stream: lambda must be positive");
  }
  PhiloxStream model_rng = make_stream(cfg.seed, StreamRole::Models);
  std::vector<DecisionVector> centers;
  for (std::size_t s = 0; s < segment_count(cfg); ++s) centers.push_back(sample_uniform_region(cfg.region, model_rng));

  std::vector<LossRound> rounds;
  rounds.reserve(cfg.horizon);
  for (std::size_t t = 1; t <= cfg.horizon; ++t) {
    const DecisionVector& c = centers[segment_of(cfg, t)];
    rounds.push_back(LossRound::quadratic(c, curvature, cfg.region.project(c)));
  }
  return rounds;
}

void write_environment_csv(const std::filesystem::path& path, const EnvironmentConfig& cfg,
                           const std::vector<LossRound>& rounds) {
  std::vector<std::string> header{"t", "segment_id"};
  for (std::size_t i = 0; i < cfg.dimension; ++i) header.push_back("x" + std::to_string(i));
  CsvWriter csv(path, header);
  for (std::size_t t = 1; t <= rounds.size(); ++t) {
    csv.cell(t).cell(segment_of(cfg, t));
    for (double x : rounds[t - 1].comparator()) csv.cell(x);
    csv.end_row();
  }
}

}  // namespace dynoco
