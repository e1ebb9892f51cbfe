#include "dynoco/vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dynoco/errors.hpp"

namespace dynoco {
namespace {

template <class F>
DecisionVector zip(const DecisionVector& a, const DecisionVector& b, const char* where, F f) {
  require_same_dim(a, b, where);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return DecisionVector(std::move(out));
}

template <class F>
DecisionVector map(const DecisionVector& a, F f) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return DecisionVector(std::move(out));
}

}  // namespace

DecisionVector::DecisionVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) detail::throw_contract("DecisionVector: length must be >= 1");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i])) {
      detail::throw_degenerate("DecisionVector: non-finite entry at index " + std::to_string(i));
    }
  }
}

DecisionVector::DecisionVector(std::initializer_list<double> entries)
    : DecisionVector(std::vector<double>(entries)) {}

DecisionVector DecisionVector::zeros(std::size_t dim) { return filled(dim, 0.0); }

DecisionVector DecisionVector::filled(std::size_t dim, double value) {
  return DecisionVector(std::vector<double>(dim, value));
}

void require_same_dim(const DecisionVector& a, const DecisionVector& b, const char* where) {
  if (a.size() != b.size()) {
    detail::throw_contract(std::string(where) + ": dimension mismatch (" + std::to_string(a.size()) +
                           " vs " + std::to_string(b.size()) + ")");
  }
}

DecisionVector operator+(const DecisionVector& a, const DecisionVector& b) {
  return zip(a, b, "operator+", [](double x, double y) { return x + y; });
}

DecisionVector operator-(const DecisionVector& a, const DecisionVector& b) {
  return zip(a, b, "operator-", [](double x, double y) { return x - y; });
}

DecisionVector operator*(double s, const DecisionVector& a) {
  return map(a, [s](double x) { return s * x; });
}

DecisionVector product(const DecisionVector& a, const DecisionVector& b) {
  return zip(a, b, "product", [](double x, double y) { return x * y; });
}

DecisionVector square(const DecisionVector& a) {
  return map(a, [](double x) { return x * x; });
}

DecisionVector sqrt(const DecisionVector& a) {
  return map(a, [](double x) {
    if (x < 0.0) detail::throw_contract("sqrt: negative entry");
    return std::sqrt(x);
  });
}

DecisionVector abs(const DecisionVector& a) {
  return map(a, [](double x) { return std::fabs(x); });
}

DecisionVector divide(const DecisionVector& a, double s) {
  return map(a, [s](double x) { return x / s; });
}

DecisionVector divide(const DecisionVector& a, const DecisionVector& b) {
  return zip(a, b, "divide", [](double num, double den) {
    if (den == 0.0) {
      if (num == 0.0) return 0.0;
      detail::throw_degenerate("divide: nonzero numerator over zero denominator");
    }
    return num / den;
  });
}

DecisionVector axpy(const DecisionVector& a, double s, const DecisionVector& b) {
  return zip(a, b, "axpy", [s](double x, double y) { return x + s * y; });
}

double dot(const DecisionVector& a, const DecisionVector& b) {
  require_same_dim(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const DecisionVector& x) { return std::sqrt(dot(x, x)); }

double inf_norm(const DecisionVector& x) {
  double m = 0.0;
  for (double e : x) m = std::max(m, std::fabs(e));
  return m;
}

double weighted_norm_sq(const DecisionVector& x, const DecisionVector& v) {
  require_same_dim(x, v, "weighted_norm_sq");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (v[i] < 0.0) detail::throw_contract("weighted_norm_sq: negative weight");
    acc += v[i] * x[i] * x[i];
  }
  return acc;
}

}  // namespace dynoco
