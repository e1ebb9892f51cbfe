#pragma once

#include <cstddef>
#include <variant>

#include "dynoco/vector.hpp"

namespace dynoco {

/// Absolute slack used by FeasibleRegion::contains.
inline constexpr double kMembershipSlack = 1e-9;

/// Weight substituted for zero entries in a weighted ball projection.
inline constexpr double kProjectionWeightFloor = 1e-12;

/// Compact convex feasible set: an axis-aligned box or a Euclidean ball.
class FeasibleRegion {
 public:
  enum class Kind { Box, Ball };

  struct Box {
    DecisionVector lower;
    DecisionVector upper;
  };
  struct Ball {
    DecisionVector center;
    double radius;
  };

  /// Requires lower_i < upper_i for every i.
  static FeasibleRegion box(DecisionVector lower, DecisionVector upper);
  /// The cube [lo, hi]^dim.
  static FeasibleRegion cube(std::size_t dim, double lo, double hi);
  /// Requires radius > 0.
  static FeasibleRegion ball(DecisionVector center, double radius);
  static FeasibleRegion centered_ball(std::size_t dim, double radius);

  [[nodiscard]] Kind kind() const noexcept;
  [[nodiscard]] std::size_t dimension() const noexcept;
  [[nodiscard]] const Box* as_box() const noexcept { return std::get_if<Box>(&shape_); }
  [[nodiscard]] const Ball* as_ball() const noexcept { return std::get_if<Ball>(&shape_); }

  /// Center of the box or ball; used as the default initial iterate.
  [[nodiscard]] DecisionVector center() const;

  /// sup_{x,y in X} ||x - y||_inf.
  [[nodiscard]] double diameter_inf() const noexcept;

  /// Inclusive membership test with absolute slack `slack`.
  [[nodiscard]] bool contains(const DecisionVector& x, double slack = kMembershipSlack) const;

  /// argmin_{y in X} sum_i w_i (x_i - y_i)^2.
  ///
  /// Boxes clip coordinatewise, independent of the weights. Balls solve the
  /// scalar multiplier equation sum_i w_i^2 d_i^2 / (w_i + mu)^2 = r^2 by
  /// bracketed bisection; zero weights are floored to kProjectionWeightFloor.
  /// A ball projection of an exterior point with all-zero weights throws
  /// DegenerateState.
  [[nodiscard]] DecisionVector project_weighted(const DecisionVector& weights,
                                                const DecisionVector& x) const;

  /// Euclidean (identity-weight) projection.
  [[nodiscard]] DecisionVector project(const DecisionVector& x) const;

 private:
  explicit FeasibleRegion(std::variant<Box, Ball> shape) : shape_(std::move(shape)) {}

  std::variant<Box, Ball> shape_;
};

}  // namespace dynoco
