#pragma once

#include <stdexcept>
#include <string>

namespace altrace {

/// Arguments outside an operation's mathematical domain (n <= 0, Q not an
/// exact divisor of N, odd weight, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal identity failed: a trace that must be integral is not, a
/// local count does not divide exactly, a signed dimension is negative.
/// Signals an interpretation or implementation bug rather than bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Externally supplied data is missing or malformed.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace altrace

namespace altrace {

/// Reading or writing a file or stream failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace altrace
