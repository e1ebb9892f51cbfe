#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dynoco {

/// Dense, fixed-length real vector with finite entries.
///
/// Carries iterates, gradients, momenta, accumulators and comparator points.
/// Instances are immutable once built; every arithmetic helper returns a new
/// vector. Construction rejects NaN/Inf with DegenerateState and empty input
/// with ContractViolation.
class DecisionVector {
 public:
  DecisionVector() = default;
  explicit DecisionVector(std::vector<double> entries);
  DecisionVector(std::initializer_list<double> entries);

  static DecisionVector zeros(std::size_t dim);
  static DecisionVector filled(std::size_t dim, double value);

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return entries_[i]; }
  [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }
  [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
  [[nodiscard]] auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const DecisionVector&, const DecisionVector&) = default;

 private:
  std::vector<double> entries_;
};

/// Throws ContractViolation unless a and b have equal length.
void require_same_dim(const DecisionVector& a, const DecisionVector& b, const char* where);

// Entrywise kernels.
DecisionVector operator+(const DecisionVector& a, const DecisionVector& b);
DecisionVector operator-(const DecisionVector& a, const DecisionVector& b);
DecisionVector operator*(double s, const DecisionVector& a);
DecisionVector product(const DecisionVector& a, const DecisionVector& b);
DecisionVector square(const DecisionVector& a);
/// Requires every entry >= 0.
DecisionVector sqrt(const DecisionVector& a);
DecisionVector abs(const DecisionVector& a);
DecisionVector divide(const DecisionVector& a, double s);

/// Entrywise a / b with 0/0 := 0. A nonzero numerator over a zero denominator
/// throws DegenerateState.
DecisionVector divide(const DecisionVector& a, const DecisionVector& b);

/// Returns a + s * b.
DecisionVector axpy(const DecisionVector& a, double s, const DecisionVector& b);

double dot(const DecisionVector& a, const DecisionVector& b);
double norm2(const DecisionVector& x);
double inf_norm(const DecisionVector& x);

/// Sum_i v_i * x_i^2. Weights must be nonnegative.
double weighted_norm_sq(const DecisionVector& x, const DecisionVector& v);

}  // namespace dynoco
