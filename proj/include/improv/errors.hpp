#pragma once

#include <stdexcept>
#include <string>

namespace improv {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (demo, scene, model, plan, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested start state fails the scene feasibility checks.
class InfeasibleStartError : public Error {
 public:
  using Error::Error;
};

/// Every terminal state of the search tree was demoted as infeasible.
class NoFeasiblePlanError : public Error {
 public:
  using Error::Error;
};

}  // namespace improv
