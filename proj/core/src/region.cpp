#include "dynoco/region.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dynoco/errors.hpp"

namespace dynoco {
namespace {

constexpr double kResidualTol = 1e-12;
constexpr int kMaxBisection = 2000;

void check_weights(const DecisionVector& weights, std::size_t dim) {
  if (weights.size() != dim) detail::throw_contract("project_weighted: weight dimension mismatch");
  for (double w : weights) {
    if (w < 0.0) detail::throw_contract("project_weighted: negative weight");
  }
}

// Solves sum_i w_i^2 d_i^2 / (w_i + mu)^2 = r^2 for mu >= 0, given ||d|| > r.
DecisionVector project_ball(const FeasibleRegion::Ball& ball, const DecisionVector& weights,
                            const DecisionVector& x) {
  const std::size_t p = x.size();
  std::vector<double> d(p), w(p);
  bool any_positive = false;
  double w_max = 0.0;
  double d_norm_sq = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    d[i] = x[i] - ball.center[i];
    d_norm_sq += d[i] * d[i];
    any_positive = any_positive || weights[i] > 0.0;
    w[i] = std::max(weights[i], kProjectionWeightFloor);
    w_max = std::max(w_max, w[i]);
  }
  const double r = ball.radius;
  const double r_sq = r * r;
  if (d_norm_sq <= r_sq) return x;
  if (!any_positive) detail::throw_degenerate("project_weighted: ball projection with all weights zero");

  auto phi = [&](double mu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double s = w[i] * d[i] / (w[i] + mu);
      acc += s * s;
    }
    return acc;
  };

  double lo = 0.0;
  double hi = w_max * std::sqrt(d_norm_sq) / r;
  while (phi(hi) > r_sq) hi *= 2.0;

  // phi is decreasing; keep phi(lo) > r^2 >= phi(hi) so that hi stays feasible.
  for (int iter = 0; iter < kMaxBisection; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double val = phi(mid);
    if (val > r_sq) {
      lo = mid;
    } else {
      hi = mid;
      if (r_sq - val <= kResidualTol) break;
    }
  }

  std::vector<double> y(p);
  for (std::size_t i = 0; i < p; ++i) y[i] = ball.center[i] + w[i] * d[i] / (w[i] + hi);
  return DecisionVector(std::move(y));
}

}  // namespace

FeasibleRegion FeasibleRegion::box(DecisionVector lower, DecisionVector upper) {
  require_same_dim(lower, upper, "FeasibleRegion::box");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      detail::throw_contract("FeasibleRegion::box: lower must be < upper at index " + std::to_string(i));
    }
  }
  return FeasibleRegion(Box{std::move(lower), std::move(upper)});
}

FeasibleRegion FeasibleRegion::cube(std::size_t dim, double lo, double hi) {
  return box(DecisionVector::filled(dim, lo), DecisionVector::filled(dim, hi));
}

FeasibleRegion FeasibleRegion::ball(DecisionVector center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    detail::throw_contract("FeasibleRegion::ball: radius must be positive and finite");
  }
  return FeasibleRegion(Ball{std::move(center), radius});
}

FeasibleRegion FeasibleRegion::centered_ball(std::size_t dim, double radius) {
  return ball(DecisionVector::zeros(dim), radius);
}

FeasibleRegion::Kind FeasibleRegion::kind() const noexcept {
  return as_box() ? Kind::Box : Kind::Ball;
}

std::size_t FeasibleRegion::dimension() const noexcept {
  if (const auto* b = as_box()) return b->lower.size();
  return as_ball()->center.size();
}

DecisionVector FeasibleRegion::center() const {
  if (const auto* b = as_box()) return 0.5 * (b->lower + b->upper);
  return as_ball()->center;
}

double FeasibleRegion::diameter_inf() const noexcept {
  if (const auto* b = as_box()) {
    double m = 0.0;
    for (std::size_t i = 0; i < b->lower.size(); ++i) m = std::max(m, b->upper[i] - b->lower[i]);
    return m;
  }
  return 2.0 * as_ball()->radius;
}

bool FeasibleRegion::contains(const DecisionVector& x, double slack) const {
  if (x.size() != dimension()) detail::throw_contract("contains: dimension mismatch");
  if (const auto* b = as_box()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < b->lower[i] - slack || x[i] > b->upper[i] + slack) return false;
    }
    return true;
  }
  const auto& ball = *as_ball();
  return norm2(x - ball.center) <= ball.radius + slack;
}

DecisionVector FeasibleRegion::project_weighted(const DecisionVector& weights,
                                                const DecisionVector& x) const {
  if (x.size() != dimension()) detail::throw_contract("project_weighted: point dimension mismatch");
  check_weights(weights, dimension());
  if (const auto* b = as_box()) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::clamp(x[i], b->lower[i], b->upper[i]);
    return DecisionVector(std::move(y));
  }
  return project_ball(*as_ball(), weights, x);
}

DecisionVector FeasibleRegion::project(const DecisionVector& x) const {
  return project_weighted(DecisionVector::filled(dimension(), 1.0), x);
}

}  // namespace dynoco
