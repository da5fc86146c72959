#pragma once

#include <stdexcept>
#include <string>

namespace ipstele {

/// Parameter outside the physical or numerical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Probability mass outside the truncated Fock space exceeds the allowed tail.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A conditional state was requested for an outcome of zero probability.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on incompatible truncated spaces.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root search found more than one bracket where a unique root was expected.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ipstele
