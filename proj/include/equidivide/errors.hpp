#pragma once

#include <stdexcept>
#include <string>

namespace equidivide {

// Malformed input files (JSON, edge lists).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The caller broke a documented precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A run failed where the construction is supposed to succeed.
// Seeing one of these means a bug or a numerical breakdown.
class GuaranteeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace equidivide
