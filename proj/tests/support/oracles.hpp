// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the library's numerical kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace dynoco::testing {

using Seq = std::vector<std::vector<double>>;

struct Point2 {
  double x;
  double y;
};

inline double weighted_sq(Point2 w, Point2 a, Point2 b) {
  const double e0 = a.x - b.x;
  const double e1 = a.y - b.y;
  return w.x * e0 * e0 + w.y * e1 * e1;
}

/// Brute-force argmin of w0 (y0 - x0)^2 + w1 (y1 - x1)^2 over the disk
/// ||y - c|| <= r on a polar grid: radii in steps of `h` (the rim included)
/// and angles in steps of `h` radians.
inline Point2 grid_search_disk_projection(Point2 c, double r, Point2 w, Point2 x, double h = 1e-3) {
  Point2 best = c;
  double best_val = weighted_sq(w, c, x);
  const auto n_r = static_cast<long>(std::ceil(r / h));
  const auto n_a = static_cast<long>(std::ceil(2 * M_PI / h));
  for (long i = 1; i <= n_r; ++i) {
    const double rho = std::min(r, static_cast<double>(i) * h);
    for (long j = 0; j < n_a; ++j) {
      const double phi = static_cast<double>(j) * h;
      const Point2 y{c.x + rho * std::cos(phi), c.y + rho * std::sin(phi)};
      const double val = weighted_sq(w, y, x);
      if (val < best_val) {
        best_val = val;
        best = y;
      }
    }
  }
  return best;
}

/// Smallest objective value over the Cartesian grid of spacing `h` clipped to
/// the disk. A correct projection is never beaten by any grid point.
inline double cartesian_grid_min(Point2 c, double r, Point2 w, Point2 x, double h = 1e-3) {
  double best_val = INFINITY;
  const auto n = static_cast<long>(std::ceil(r / h));
  for (long i = -n; i <= n; ++i) {
    const double dx = static_cast<double>(i) * h;
    for (long j = -n; j <= n; ++j) {
      const double dy = static_cast<double>(j) * h;
      if (dx * dx + dy * dy > r * r) continue;
      best_val = std::min(best_val, weighted_sq(w, {c.x + dx, c.y + dy}, x));
    }
  }
  return best_val;
}

/// Naive definitional path metrics: a double loop over (t, i).
struct NaivePaths {
  std::vector<double> l1;
  std::vector<double> sq;
  double l1_total = 0.0;
  double sq_total = 0.0;
  double l2 = 0.0;
};

inline NaivePaths naive_paths(const Seq& seq) {
  NaivePaths out;
  const std::size_t p = seq.front().size();
  out.l1.assign(p, 0.0);
  out.sq.assign(p, 0.0);
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    double step_sq = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double d = seq[t + 1][i] - seq[t][i];
      out.l1[i] += std::fabs(d);
      out.sq[i] += d * d;
      step_sq += d * d;
    }
    out.l2 += std::sqrt(step_sq);
  }
  for (std::size_t i = 0; i < p; ++i) {
    out.l1_total += out.l1[i];
    out.sq_total += out.sq[i];
  }
  return out;
}

/// Bound formulas transcribed term by term in long double.
struct FormulaInputs {
  long double alpha, beta, lambda, L, D, gamma, grad_star_sq;
  std::vector<long double> v1, vT, C, S, g, x1, xs1;
};

inline long double fsum(const std::vector<long double>& v) {
  long double s = 0;
  for (auto x : v) s += x;
  return s;
}

inline long double fdist(const FormulaInputs& in) {
  long double s = 0;
  for (std::size_t i = 0; i < in.x1.size(); ++i) s += std::sqrt(in.v1[i]) * (in.x1[i] - in.xs1[i]) * (in.x1[i] - in.xs1[i]);
  return s;
}

inline long double fweighted(const std::vector<long double>& v, const std::vector<long double>& r) {
  long double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::sqrt(v[i]) * r[i];
  return s;
}

inline long double fsqrt_sum(const std::vector<long double>& v) {
  long double s = 0;
  for (auto x : v) s += std::sqrt(x);
  return s;
}

inline long double formula_theorem1(const FormulaInputs& in) {
  const long double a = in.alpha, b = in.beta, lam = in.lambda, D = in.D;
  const long double sbar = 1 - 2 * lam / (1 / a + lam);
  const long double stil = 2 / (lam + 1 / a);
  const long double k = 1 / (1 - sbar);
  const long double w1 = 1 + k * a * b * stil / ((1 - b) * (1 - b) * (1 - b));
  const long double w2 = 0.5L * k * (stil * b * b / (1 - b) + 2 * D);
  const long double w3 = 0.5L * k * (fdist(in) + (b * stil / (2 * (1 - b) * a) + 1) * D * D * fsqrt_sum(in.vT));
  return w1 * fsum(in.g) + w2 * fweighted(in.vT, in.C) + w3;
}

struct FormulaTheorem2 {
  long double branch1, branch2;
};

inline FormulaTheorem2 formula_theorem2(const FormulaInputs& in) {
  const long double a = in.alpha, b = in.beta, lam = in.lambda, D = in.D;
  const long double stil = 2 / (lam + 1 / a);
  const long double th = 1 / (2 * lam * a) + 0.5L;
  const long double cube = (1 - b) * (1 - b) * (1 - b);
  const long double lg = in.L + in.gamma;
  const long double w1 = 1 + 4 * stil * b * a * th / (3 * cube);
  const long double w2 = 2.0L / 3 * (stil * b * b * th / (1 - b) + 2 * D);
  const long double w3 = 2.0L / 3 * (fdist(in) + (stil * b * th / (2 * a * (1 - b)) + 1) * D * D * fsqrt_sum(in.vT));
  const long double u1 = stil * th * lg * 4 * b * a / cube;
  const long double u2 = lg * (b * stil * th / (1 - b) + 2);
  const long double u3 = lg * (fdist(in) + (b * stil * th / (a * (1 - b)) + 1) * D * D * fsqrt_sum(in.vT));
  return {w1 * fsum(in.g) + w2 * fweighted(in.vT, in.C) + w3,
          in.grad_star_sq / (2 * in.gamma) + u1 * fsum(in.g) + u2 * fweighted(in.vT, in.S) + u3};
}

}  // namespace dynoco::testing
