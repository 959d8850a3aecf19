#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kippen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scalar or matrix-file text. `offset` is the byte offset of the
/// offending character within the parsed string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Two quadratic-extension values with different square roots were combined.
class RadicandMismatch : public Error {
 public:
  using Error::Error;
};

/// A polynomial division that was required to be exact left a remainder.
class NonExactDivision : public Error {
 public:
  using Error::Error;
};

class RankDeficiencyAmbiguous : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateBranch : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public Error {
 public:
  using Error::Error;
};

class ResidualTooLarge : public Error {
 public:
  using Error::Error;
};

/// An operation that requires a contraction was handed something else.
class NotAContraction : public Error {
 public:
  using Error::Error;
};

}  // namespace kippen
