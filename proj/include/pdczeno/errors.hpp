#pragma once

#include <stdexcept>

namespace pdczeno {

/// Rejected input: NaN, negative coupling or length, malformed sweep spec.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but outside the domain of the requested formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matrix exponential or integrator failed to produce a result.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientPoints : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pdczeno
