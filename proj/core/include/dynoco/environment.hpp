#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "dynoco/region.hpp"
#include "dynoco/rng.hpp"
#include "dynoco/vector.hpp"

namespace dynoco {

enum class LossKind { SquareRegression, StronglyConvexQuadratic };

/// One round's loss f_t together with its comparator x*_t.
///
/// Square regression: f(x) = 1/2 (a^T x - b)^2 with L = ||a||^2.
/// Quadratic: f(x) = (lambda/2) ||x - c||^2 with L = lambda.
class LossRound {
 public:
  static LossRound square_regression(DecisionVector feature, double label, DecisionVector comparator);
  static LossRound quadratic(DecisionVector center, double curvature, DecisionVector comparator);

  [[nodiscard]] LossKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return comparator_.size(); }

  [[nodiscard]] double value(const DecisionVector& x) const;
  [[nodiscard]] DecisionVector gradient(const DecisionVector& x) const;

  [[nodiscard]] const DecisionVector& comparator() const noexcept { return comparator_; }
  /// Euclidean smoothness constant.
  [[nodiscard]] double smoothness() const noexcept { return smoothness_; }
  /// Euclidean strong-convexity constant; absent for square regression.
  [[nodiscard]] std::optional<double> strong_convexity() const noexcept;

  // Square regression data (a_t, b_t), or quadratic data (c_t, lambda).
  [[nodiscard]] const DecisionVector& feature() const noexcept { return vec_; }
  [[nodiscard]] double label() const noexcept { return scalar_; }
  [[nodiscard]] const DecisionVector& center() const noexcept { return vec_; }
  [[nodiscard]] double curvature() const noexcept { return scalar_; }

 private:
  LossRound(LossKind kind, DecisionVector vec, double scalar, DecisionVector comparator, double smoothness)
      : kind_(kind), vec_(std::move(vec)), scalar_(scalar), comparator_(std::move(comparator)),
        smoothness_(smoothness) {}

  LossKind kind_;
  DecisionVector vec_;
  double scalar_;
  DecisionVector comparator_;
  double smoothness_;
};

struct EnvironmentConfig {
  std::size_t dimension = 10;
  std::size_t horizon = 5000;
  std::size_t drift_every = 2000;
  FeasibleRegion region = FeasibleRegion::centered_ball(10, 2.5);
  double noise_lo = 0.0;
  double noise_hi = 0.1;
  std::uint64_t seed = 0;
  LossKind kind = LossKind::SquareRegression;

  /// Throws ConfigurationError on any broken invariant.
  void validate() const;
};

/// Number of piecewise-constant comparator segments, ceil(T / drift_every).
std::size_t segment_count(const EnvironmentConfig& cfg);
/// Zero-based segment index of round t (1-based).
std::size_t segment_of(const EnvironmentConfig& cfg, std::size_t t);

/// Drifting linear-regression stream: b_t = a_t^T x*_t + eps_t.
///
/// Models are drawn uniformly from the region ball once per segment, features
/// are i.i.d. N(0, 1) and noise is uniform on [noise_lo, noise_hi]. Each role
/// uses its own Philox substream. The region must be a ball.
std::vector<LossRound> make_drifting_regression(const EnvironmentConfig& cfg);

/// Strongly convex quadratic stream with piecewise-constant centers drawn
/// uniformly from the region. The comparator is the exact minimizer.
std::vector<LossRound> make_strongly_convex_stream(const EnvironmentConfig& cfg, double curvature);

/// Uniform sample from a ball (Gaussian direction, radius * U^{1/p}).
DecisionVector sample_uniform_ball(const FeasibleRegion::Ball& ball, PhiloxStream& rng);

/// CSV with header `t,segment_id,x0,...,x{p-1}`.
void write_environment_csv(const std::filesystem::path& path, const EnvironmentConfig& cfg,
                           const std::vector<LossRound>& rounds);

}  // namespace dynoco
