#include "dynoco/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "dynoco/errors.hpp"
#include "dynoco/optimizers.hpp"

namespace dynoco {
namespace {

// Rounding slack for the hypotheses alpha * L <= 1 and alpha * lambda <= 1,
// which are typically set with equality (alpha = 1/L).
constexpr double kHypothesisSlack = 1e-12;

double sum_sqrt(const DecisionVector& v) {
  double acc = 0.0;
  for (double x : v) acc += std::sqrt(x);
  return acc;
}

double sum_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

double weighted_regularity(const DecisionVector& v, const std::vector<double>& reg) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::sqrt(v[i]) * reg[i];
  return acc;
}

// sum_i v_{1,i}^{1/2} (x_{1,i} - x*_{1,i})^2
double initial_distance(const BoundInputs& in) {
  double acc = 0.0;
  for (std::size_t i = 0; i < in.dimension(); ++i) {
    const double d = in.x_first[i] - in.comparator_first[i];
    acc += std::sqrt(in.accumulator_first[i]) * d * d;
  }
  return acc;
}

}  // namespace

void BoundInputs::validate() const {
  const std::size_t p = dimension();
  if (p == 0) detail::throw_contract("BoundInputs: empty x_first");
  if (comparator_first.size() != p || accumulator_first.size() != p || accumulator_last.size() != p ||
      l1_regularity.size() != p || squared_regularity.size() != p || gradient_norms.size() != p) {
    detail::throw_contract("BoundInputs: per-coordinate inputs must all have length p");
  }
  if (!(alpha > 0.0) || !(lambda > 0.0) || !(smoothness > 0.0) || !(diameter_inf > 0.0)) {
    detail::throw_contract("BoundInputs: alpha, lambda, L and D_inf must be positive");
  }
  if (!(beta >= 0.0 && beta < 1.0)) detail::throw_contract("BoundInputs: beta must lie in [0, 1)");
  for (std::size_t i = 0; i < p; ++i) {
    if (accumulator_first[i] < 0.0 || accumulator_last[i] < 0.0 || l1_regularity[i] < 0.0 ||
        squared_regularity[i] < 0.0 || gradient_norms[i] < 0.0) {
      detail::throw_contract("BoundInputs: accumulators, regularities and norms must be nonnegative");
    }
  }
  if (comparator_gradient_sq_sum < 0.0) detail::throw_contract("BoundInputs: negative gradient sum");
  if (alpha * smoothness > 1.0 + kHypothesisSlack) {
    throw BoundInapplicable("bound requires alpha <= 1/L (alpha*L = " + std::to_string(alpha * smoothness) + ")");
  }
}

Lemma1Constants lemma1_constants(double alpha, double lambda) {
  if (!(alpha > 0.0) || !(lambda > 0.0)) detail::throw_contract("lemma1_constants: alpha and lambda must be > 0");
  if (lambda * alpha > 1.0 + kHypothesisSlack) {
    throw BoundInapplicable("contraction factor leaves [0, 1): lambda*alpha = " + std::to_string(lambda * alpha));
  }
  const double inv_alpha = 1.0 / alpha;
  return {1.0 - 2.0 * lambda / (inv_alpha + lambda), 2.0 / (lambda + inv_alpha)};
}

double theta(double alpha, double lambda) { return 1.0 / (2.0 * lambda * alpha) + 0.5; }

double lemma1_vartheta(const BoundInputs& in) {
  in.validate();
  const double a = in.alpha;
  const double b = in.beta;
  double acc = 0.0;
  for (std::size_t i = 0; i < in.dimension(); ++i) {
    acc += (in.diameter_inf * in.diameter_inf / (2.0 * a) + b * in.l1_regularity[i]) *
           std::sqrt(in.accumulator_last[i]);
  }
  return acc + 2.0 * a / ((1.0 - b) * (1.0 - b)) * sum_of(in.gradient_norms);
}

Theorem1Bound theorem1_rhs(const BoundInputs& in) {
  in.validate();
  const Lemma1Constants c = lemma1_constants(in.alpha, in.lambda);
  const double a = in.alpha;
  const double b = in.beta;
  const double d = in.diameter_inf;
  const double inv_gap = 1.0 / (1.0 - c.sigma_bar);

  Theorem1Bound out{c, 0.0, 0.0, 0.0, 0.0};
  out.varpi1 = 1.0 + inv_gap * a * b * c.sigma_tilde / std::pow(1.0 - b, 3);
  out.varpi2 = 0.5 * inv_gap * (c.sigma_tilde * b * b / (1.0 - b) + 2.0 * d);
  out.varpi3 = 0.5 * inv_gap *
               (initial_distance(in) +
                (b * c.sigma_tilde / (2.0 * (1.0 - b) * a) + 1.0) * d * d * sum_sqrt(in.accumulator_last));
  out.rhs = out.varpi1 * sum_of(in.gradient_norms) +
            out.varpi2 * weighted_regularity(in.accumulator_last, in.l1_regularity) + out.varpi3;
  return out;
}

Theorem2Bound theorem2_rhs(const BoundInputs& in) {
  if (!(in.gamma > 0.0)) detail::throw_contract("theorem2_rhs: gamma must be > 0");
  in.validate();
  const std::size_t k = compute_k(in.alpha, in.lambda);
  if (in.inner_iterations != k) {
    throw BoundInapplicable("theorem2_rhs: run used K = " + std::to_string(in.inner_iterations) +
                            " but the bound needs K = " + std::to_string(k));
  }
  const Lemma1Constants c = lemma1_constants(in.alpha, in.lambda);
  const double a = in.alpha;
  const double b = in.beta;
  const double d = in.diameter_inf;
  const double st = c.sigma_tilde;
  const double th = theta(a, in.lambda);
  const double lg = in.smoothness + in.gamma;
  const double one_minus_b3 = std::pow(1.0 - b, 3);

  Theorem2Bound out{};
  out.constants = c;
  out.theta = th;
  out.varpi1 = 1.0 + 4.0 * st * b * a * th / (3.0 * one_minus_b3);
  out.varpi2 = 2.0 / 3.0 * (st * b * b * th / (1.0 - b) + 2.0 * d);
  out.varpi3 = 2.0 / 3.0 *
               (initial_distance(in) + (st * b * th / (2.0 * a * (1.0 - b)) + 1.0) * d * d *
                                           sum_sqrt(in.accumulator_last));
  out.varpi1_acute = st * th * lg * 4.0 * b * a / one_minus_b3;
  out.varpi2_acute = lg * (b * st * th / (1.0 - b) + 2.0);
  out.varpi3_acute =
      lg * (initial_distance(in) + (b * st * th / (a * (1.0 - b)) + 1.0) * d * d * sum_sqrt(in.accumulator_last));

  const double g_sum = sum_of(in.gradient_norms);
  out.branch1 = out.varpi1 * g_sum + out.varpi2 * weighted_regularity(in.accumulator_last, in.l1_regularity) +
                out.varpi3;
  out.branch2 = in.comparator_gradient_sq_sum / (2.0 * in.gamma) + out.varpi1_acute * g_sum +
                out.varpi2_acute * weighted_regularity(in.accumulator_last, in.squared_regularity) +
                out.varpi3_acute;
  out.min = std::min(out.branch1, out.branch2);
  return out;
}

GammaChoice best_gamma_for_branch2(BoundInputs in) {
  std::optional<GammaChoice> best;
  for (int k = -6; k <= 6; ++k) {
    in.gamma = std::ldexp(in.smoothness, k);
    Theorem2Bound b = theorem2_rhs(in);
    if (!best || b.branch2 < best->bound.branch2) best = GammaChoice{in.gamma, b};
  }
  return *best;
}

}  // namespace dynoco
