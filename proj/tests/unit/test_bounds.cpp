#include <cmath>

#include "doctest.h"
#include "dynoco/bounds.hpp"
#include "dynoco/errors.hpp"
#include "oracles/reference_values.inc"
#include "support/bound_cases.hpp"

using dynoco::BoundInputs;

namespace {

// alpha=0.5, beta=0.5, lambda=1, D=2, p=1, v1=1, vT=4, ||g||=3, C*=1, (x1-x*1)^2=0.25.
BoundInputs worked_case() {
  BoundInputs in;
  in.alpha = 0.5;
  in.beta = 0.5;
  in.lambda = 1.0;
  in.smoothness = 1.0;
  in.diameter_inf = 2.0;
  in.accumulator_first = {1.0};
  in.accumulator_last = {4.0};
  in.gradient_norms = {3.0};
  in.l1_regularity = {1.0};
  in.squared_regularity = {1.0};
  in.x_first = {0.5};
  in.comparator_first = {0.0};
  in.inner_iterations = 3;
  in.gamma = 1.0;
  return in;
}

}  // namespace

TEST_CASE("lemma constants") {
  auto c = dynoco::lemma1_constants(0.5, 1.0);
  CHECK(c.sigma_bar == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c.sigma_tilde == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  c = dynoco::lemma1_constants(1.0, 1.0);
  CHECK(c.sigma_bar == 0.0);
  CHECK(c.sigma_tilde == 1.0);
  // Vanishing curvature pushes the contraction factor to 1.
  CHECK(dynoco::lemma1_constants(0.5, 1e-12).sigma_bar > 1 - 1e-11);

  CHECK_THROWS_AS(dynoco::lemma1_constants(2.0, 1.0), dynoco::BoundInapplicable);
  CHECK_THROWS_AS(dynoco::lemma1_constants(0.0, 1.0), dynoco::ContractViolation);
  CHECK(dynoco::theta(0.5, 1.0) == 1.5);
}

TEST_CASE("sigma_bar = 1 - lambda sigma_tilde") {
  dynoco::PhiloxStream rng(90, 0);
  for (int k = 0; k < 1000; ++k) {
    const double lambda = std::exp(rng.uniform(-5, 5));
    const double alpha = rng.uniform(1e-4, 1.0) / lambda;
    const auto c = dynoco::lemma1_constants(alpha, lambda);
    CHECK(std::fabs(c.sigma_bar - (1 - lambda * c.sigma_tilde)) <= 1e-14);
    CHECK(c.sigma_bar >= -1e-15);
    CHECK(c.sigma_bar < 1.0);
  }
}

TEST_CASE("theorem 1 worked example") {
  const auto b = dynoco::theorem1_rhs(worked_case());
  CHECK(b.varpi1 == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(b.varpi2 == doctest::Approx(3.25).epsilon(1e-14));
  CHECK(b.varpi3 == doctest::Approx(10.1875).epsilon(1e-14));
  CHECK(std::fabs(b.rhs - kTheorem1Worked[0]) <= 1e-12 * kTheorem1Worked[0]);
}

TEST_CASE("beta = 0 collapses the momentum terms") {
  auto in = worked_case();
  in.beta = 0.0;
  const auto c = dynoco::lemma1_constants(in.alpha, in.lambda);
  const double inv_gap = 1.0 / (1.0 - c.sigma_bar);
  const auto b1 = dynoco::theorem1_rhs(in);
  CHECK(b1.varpi1 == 1.0);
  CHECK(b1.varpi2 == doctest::Approx(inv_gap * 2.0).epsilon(1e-15));
  CHECK(b1.varpi3 == doctest::Approx(0.5 * inv_gap * (0.25 + 4.0 * 2.0)).epsilon(1e-15));

  const auto b2 = dynoco::theorem2_rhs(in);
  CHECK(b2.varpi1 == 1.0);
  CHECK(b2.varpi1_acute == 0.0);
  CHECK(b2.varpi2_acute == 2.0 * (in.smoothness + in.gamma));
}

TEST_CASE("zero comparator motion removes the C* term") {
  auto in = worked_case();
  in.l1_regularity = {0.0};
  const auto b = dynoco::theorem1_rhs(in);
  CHECK(b.rhs == doctest::Approx(b.varpi1 * 3.0 + b.varpi3).epsilon(1e-15));
}

TEST_CASE("theorem 1 is monotone in its data") {
  dynoco::PhiloxStream rng(91, 0);
  for (int k = 0; k < 200; ++k) {
    const auto base = dynoco::testing::random_bound_inputs(rng, false);
    const double r0 = dynoco::theorem1_rhs(base).rhs;
    const std::size_t i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(base.dimension()));
    auto more_c = base;
    more_c.l1_regularity[i] += 1.0;
    CHECK(dynoco::theorem1_rhs(more_c).rhs >= r0);
    auto more_g = base;
    more_g.gradient_norms[i] += 1.0;
    CHECK(dynoco::theorem1_rhs(more_g).rhs >= r0);
    auto more_v = base;
    std::vector<double> v(base.accumulator_last.begin(), base.accumulator_last.end());
    v[i] += 1.0;
    more_v.accumulator_last = dynoco::DecisionVector(v);
    CHECK(dynoco::theorem1_rhs(more_v).rhs >= r0);
    auto more_d = base;
    more_d.diameter_inf *= 1.5;
    CHECK(dynoco::theorem1_rhs(more_d).rhs >= r0);
  }
}

TEST_CASE("bounds match the long-double formula oracle") {
  dynoco::PhiloxStream rng(92, 0);
  for (int k = 0; k < 100; ++k) {
    const auto in = dynoco::testing::random_bound_inputs(rng, k % 4 == 0);
    const auto ref = dynoco::testing::mirror(in);
    CHECK(dynoco::testing::rel_close(dynoco::theorem1_rhs(in).rhs, dynoco::testing::formula_theorem1(ref), 1e-12));
    const auto t2 = dynoco::theorem2_rhs(in);
    const auto want = dynoco::testing::formula_theorem2(ref);
    CHECK(dynoco::testing::rel_close(t2.branch1, want.branch1, 1e-12));
    CHECK(dynoco::testing::rel_close(t2.branch2, want.branch2, 1e-12));
    CHECK(t2.min == std::min(t2.branch1, t2.branch2));
  }
}

TEST_CASE("applicability checks") {
  auto in = worked_case();
  in.smoothness = 4.0;  // alpha * L = 2
  CHECK_THROWS_AS(dynoco::theorem1_rhs(in), dynoco::BoundInapplicable);

  in = worked_case();
  in.inner_iterations = 10;
  CHECK_THROWS_AS(dynoco::theorem2_rhs(in), dynoco::BoundInapplicable);

  in = worked_case();
  in.gamma = 0.0;
  CHECK_THROWS_AS(dynoco::theorem2_rhs(in), dynoco::ContractViolation);
  in.gamma = -1.0;
  CHECK_THROWS_AS(dynoco::theorem2_rhs(in), dynoco::ContractViolation);

  in = worked_case();
  in.gradient_norms = {1.0, 2.0};
  CHECK_THROWS_AS(dynoco::theorem1_rhs(in), dynoco::ContractViolation);
}

TEST_CASE("gamma grid picks the smallest S*-branch") {
  auto in = worked_case();
  in.comparator_gradient_sq_sum = 5.0;
  const auto best = dynoco::best_gamma_for_branch2(in);
  for (int k = -6; k <= 6; ++k) {
    in.gamma = std::ldexp(in.smoothness, k);
    CHECK(best.bound.branch2 <= dynoco::theorem2_rhs(in).branch2);
  }
  CHECK(std::log2(best.gamma / in.smoothness) == std::round(std::log2(best.gamma / in.smoothness)));
}

TEST_CASE("vartheta is finite and positive") {
  const double v = dynoco::lemma1_vartheta(worked_case());
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
}
