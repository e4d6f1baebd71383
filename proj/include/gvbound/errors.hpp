#pragma once

#include <stdexcept>
#include <string>

namespace gvbound {

// Base for every error raised by the library. Callers that only care about
// "something went wrong" catch this; the subclasses exist so tests and the
// CLI can distinguish contract violations from numerical failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Vector/polynomial arities disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A bracketing root finder was handed an interval without a sign change.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

// A root scan found no sign change down to the finest grid.
class NoRootFound : public Error {
 public:
  using Error::Error;
};

// Iterative solver exhausted its iteration budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Enumeration oracle asked to enumerate more than it is allowed to.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

// DP table would exceed the configured cell budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace gvbound
