#pragma once

#include <stdexcept>
#include <string>

namespace dynoco {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, negative
/// weight, point outside the region, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The numerical state cannot be continued: non-finite values, x/0 with x != 0,
/// projection with no usable weights.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

/// An experiment or environment configuration is invalid.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A regret bound was requested outside the hypotheses it was derived under.
class BoundInapplicable : public Error {
 public:
  using Error::Error;
};

namespace detail {

[[noreturn]] void throw_contract(const std::string& what);
[[noreturn]] void throw_degenerate(const std::string& what);
[[noreturn]] void throw_config(const std::string& what);

inline void require(bool ok, const char* what) {
  if (!ok) throw_contract(what);
}

}  // namespace detail
}  // namespace dynoco
