#pragma once

#include <stdexcept>

namespace tatess {

/// A computation was requested outside the range where the underlying theorem applies (e.g. p < 5).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact consistency check failed; indicates a bug or inconsistent user-supplied rules.
class InternalCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tatess
