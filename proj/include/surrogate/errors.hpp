#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surrogate {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected, std::size_t got)
      : Error(what + ": expected " + std::to_string(expected) + ", got " + std::to_string(got)),
        expected_(expected),
        got_(got) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

/// Failures of the numerical kernels (exit code 3 in the CLI).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  NotPositiveDefinite(std::size_t pivot, double value, const std::string& detail = {})
      : NumericalError("matrix is not positive definite: pivot " + std::to_string(pivot) +
                       " = " + std::to_string(value) + (detail.empty() ? "" : " (" + detail + ")")),
        pivot_(pivot),
        value_(value) {}

  std::size_t pivot() const noexcept { return pivot_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

class BreakdownError : public NumericalError {
 public:
  BreakdownError(std::size_t iteration, double curvature)
      : NumericalError("conjugate gradient breakdown at iteration " + std::to_string(iteration) +
                       ": p'Ap = " + std::to_string(curvature)),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

/// Malformed or inconsistent input data (exit code 2 in the CLI).
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingColumn : public DataError {
 public:
  explicit MissingColumn(const std::string& column)
      : DataError("missing column '" + column + "'"), column_(column) {}

  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class NonFiniteValue : public ParseError {
 public:
  NonFiniteValue(std::size_t line, const std::string& column)
      : ParseError(line, "non-finite value in column '" + column + "'"), column_(column) {}

  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class EmptyBlock : public DataError {
 public:
  EmptyBlock(std::size_t block, const std::string& why)
      : DataError("block " + std::to_string(block) + " is empty: " + why), block_(block) {}

  std::size_t block() const noexcept { return block_; }

 private:
  std::size_t block_;
};

}  // namespace surrogate
