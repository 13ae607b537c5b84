#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpde {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (operator, moment, rational, problem file).
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  explicit ParseError(const std::string& what) : Error(what), position(0) {}
  std::size_t position;
};

/// Arguments outside an operation's domain (negative u, x <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Structurally valid input that violates an operation's precondition.
struct PreconditionError : Error {
  using Error::Error;
};

/// Numeric failure: non-convergence, quadrature failure, root finder failure.
struct EvaluationError : Error {
  using Error::Error;
};

}  // namespace mpde
