#ifndef SPECNET_ERROR_HPP
#define SPECNET_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments that violate a precondition (shape, range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent external input (files, configs).
class InputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                   what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SymmetryError : public InputError {
 public:
  SymmetryError(std::ptrdiff_t row, std::ptrdiff_t col, double upper, double lower)
      : InputError("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                   ") is not symmetric: " + std::to_string(upper) + " vs " + std::to_string(lower)),
        row_(row),
        col_(col) {}

  std::ptrdiff_t row() const noexcept { return row_; }
  std::ptrdiff_t col() const noexcept { return col_; }

 private:
  std::ptrdiff_t row_;
  std::ptrdiff_t col_;
};

/// Numerical failure: the computation is well-posed but the data defeats it.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

class KeptEigenvalueNegative : public NumericError {
 public:
  KeptEigenvalueNegative(double value, int index)
      : NumericError("kept eigenvalue " + std::to_string(index) + " is not positive enough (" +
                     std::to_string(value) + ")"),
        value_(value),
        index_(index) {}

  double value() const noexcept { return value_; }
  int index() const noexcept { return index_; }

 private:
  double value_;
  int index_;
};

class ZeroRho : public NumericError {
 public:
  explicit ZeroRho(std::size_t network)
      : NumericError("estimated noise level of network " + std::to_string(network) + " is zero"),
        network_(network) {}

  std::size_t network() const noexcept { return network_; }

 private:
  std::size_t network_;
};

class DegenerateSample : public NumericError {
 public:
  using NumericError::NumericError;
};

class DivisionByZero : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace specnet

#endif  // SPECNET_ERROR_HPP
