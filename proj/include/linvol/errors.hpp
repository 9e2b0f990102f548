#pragma once

#include <stdexcept>
#include <string>

namespace linvol {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input / validation failures (CLI exit code 2).
struct ParseError : Error {
  using Error::Error;
};
struct LetterCountError : ParseError {
  using ParseError::ParseError;
};
struct EmptyRowError : ParseError {
  using ParseError::ParseError;
};
struct SizeLimitError : Error {
  using Error::Error;
};
struct ConventionError : Error {
  using Error::Error;
};
struct BalanceError : Error {
  using Error::Error;
};
struct OutOfRangeError : Error {
  using Error::Error;
};
struct ReducibleError : Error {
  using Error::Error;
};
struct ReducibleSeedError : ReducibleError {
  using ReducibleError::ReducibleError;
};
struct NotSuitableError : Error {
  using Error::Error;
};
struct NoSuspensionError : Error {
  using Error::Error;
};
struct ConnectionError : Error {
  using Error::Error;
};

// Resource budgets (CLI exit code 3).
struct BudgetExceededError : Error {
  using Error::Error;
};
struct SingularHitError : Error {
  using Error::Error;
};

// Invariant breaches that indicate a bug, never expected (CLI exit code 4).
struct InternalError : Error {
  using Error::Error;
};
struct AngleResidueError : InternalError {
  using InternalError::InternalError;
};

}  // namespace linvol
