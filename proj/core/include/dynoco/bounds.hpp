#pragma once

#include <cstddef>
#include <vector>

#include "dynoco/vector.hpp"

namespace dynoco {

/// Everything the dynamic-regret bounds are evaluated from.
///
/// For MM-AdaGrad runs the accumulators are the coordinatewise max over inner
/// slots and the gradient norms are the max over inner slots of ||g^j_{1:T,i}||.
struct BoundInputs {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;       ///< strong convexity
  double smoothness = 0.0;   ///< L
  double diameter_inf = 0.0; ///< D_inf
  DecisionVector accumulator_first;  ///< v_1
  DecisionVector accumulator_last;   ///< v_T
  std::vector<double> l1_regularity;       ///< C*_{T,i}
  std::vector<double> squared_regularity;  ///< S*_{T,i}
  std::vector<double> gradient_norms;      ///< ||g_{1:T,i}||
  DecisionVector x_first;           ///< x_1
  DecisionVector comparator_first;  ///< x*_1
  std::size_t inner_iterations = 1;
  double gamma = 0.0;
  double comparator_gradient_sq_sum = 0.0;  ///< sum_t ||grad f_t(x*_t)||^2

  [[nodiscard]] std::size_t dimension() const noexcept { return x_first.size(); }

  /// Shape and sign checks (ContractViolation) plus the hypothesis
  /// alpha <= 1/L (BoundInapplicable).
  void validate() const;
};

struct Lemma1Constants {
  double sigma_bar;    ///< 1 - 2 lambda / (1/alpha + lambda)
  double sigma_tilde;  ///< 2 / (lambda + 1/alpha)
};

/// Throws ContractViolation for nonpositive inputs and BoundInapplicable when
/// lambda * alpha > 1 (sigma_bar would leave [0, 1)).
Lemma1Constants lemma1_constants(double alpha, double lambda);

/// The vartheta term of the per-round distance recursion. Reported only; the
/// theorem right-hand sides use the expanded constants instead.
double lemma1_vartheta(const BoundInputs& in);

struct Theorem1Bound {
  Lemma1Constants constants;
  double varpi1;
  double varpi2;
  double varpi3;
  double rhs;
};

/// varpi1 sum_i ||g_{1:T,i}|| + varpi2 sum_i v_{T,i}^{1/2} C*_{T,i} + varpi3.
Theorem1Bound theorem1_rhs(const BoundInputs& in);

struct Theorem2Bound {
  Lemma1Constants constants;
  double theta;
  double varpi1;
  double varpi2;
  double varpi3;
  double varpi1_acute;
  double varpi2_acute;
  double varpi3_acute;
  double branch1;  ///< C*-branch
  double branch2;  ///< S*-branch
  double min;
};

/// Min of the C*- and S*-branches. Requires in.inner_iterations ==
/// compute_k(alpha, lambda) (else BoundInapplicable) and gamma > 0 (else
/// ContractViolation).
Theorem2Bound theorem2_rhs(const BoundInputs& in);

struct GammaChoice {
  double gamma;
  Theorem2Bound bound;
};

/// Evaluates theorem2_rhs for gamma = L * 2^k, k = -6..6, and returns the
/// gamma with the smallest S*-branch.
GammaChoice best_gamma_for_branch2(BoundInputs in);

/// theta = 1/(2 lambda alpha) + 1/2, the cap on sum_{l<K} sigma_bar^l.
double theta(double alpha, double lambda);

}  // namespace dynoco
