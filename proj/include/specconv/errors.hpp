#pragma once

#include <stdexcept>
#include <string>

namespace specconv {

/// Malformed input: shape mismatch, non-symmetric matrix, bad JSON payload.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The set C has empty intersection with the range cone.
class InfeasibleSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The (system, set) combination or requested operation is not supported.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition (e.g. separating a member).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace specconv
