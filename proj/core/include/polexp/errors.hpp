#pragma once

#include <stdexcept>
#include <string>

namespace polexp {

/// Thrown when a matrix that must be (shifted) positive definite is not.
struct NotSpdError : std::runtime_error {
  explicit NotSpdError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an iteration fails in a way the caller cannot recover from
/// (singular Remez reference system, bracket failure, ...). Surfaced by the
/// CLI as exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polexp
