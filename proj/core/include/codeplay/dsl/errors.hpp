#pragma once

#include <string>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/error.hpp"

namespace codeplay::dsl {

/// Malformed source or a statically detectable semantic error.
class SyntaxError : public Error {
 public:
  SyntaxError(SourceLoc loc, const std::string& message)
      : Error("line " + std::to_string(loc.line) + ", col " + std::to_string(loc.col) + ": " +
              message),
        loc_(loc),
        message_(message) {}

  SourceLoc loc() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  SourceLoc loc_;
  std::string message_;
};

/// Failure while running policy code; carries the function and statement location.
class PolicyError : public Error {
 public:
  PolicyError(std::string function, SourceLoc loc, const std::string& message, const char* kind)
      : Error(std::string(kind) + " in " + function + " at line " + std::to_string(loc.line) +
              ", col " + std::to_string(loc.col) + ": " + message),
        function_(std::move(function)),
        loc_(loc),
        message_(message) {}

  const std::string& function() const { return function_; }
  SourceLoc loc() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  std::string function_;
  SourceLoc loc_;
  std::string message_;
};

/// Type errors, missing keys or fields, division by zero, bad arguments.
class EvalError : public PolicyError {
 public:
  EvalError(std::string function, SourceLoc loc, const std::string& message)
      : PolicyError(std::move(function), loc, message, "runtime error") {}
};

/// The interpreter step budget ran out (treated as a timeout, not a crash).
class BudgetExceededError : public PolicyError {
 public:
  BudgetExceededError(std::string function, SourceLoc loc, int budget)
      : PolicyError(std::move(function), loc,
                    "step budget of " + std::to_string(budget) + " exhausted", "timeout") {}
};

}  // namespace codeplay::dsl
