#pragma once

#include <stdexcept>
#include <string>

namespace polya {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Broken caller contract (empty packs, overlapping supports, bad sizes).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its target (bracketing, quadrature cap, solver).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Query beyond the data actually computed (e.g. lambda above the computed spectrum).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class MeshError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Unreadable or malformed input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polya
