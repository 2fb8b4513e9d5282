#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cprt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed program text. `line`/`column` are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string expected, std::string found);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

/// A well-formed program that violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numeric conditioning is insufficient at the requested precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

/// A mathematical guarantee was observed to fail; indicates a solver defect.
class InternalError : public Error {
 public:
  using Error::Error;
};

class NotPastError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace cprt
