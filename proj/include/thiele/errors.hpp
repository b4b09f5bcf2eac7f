#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thiele {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sample data violates the SampleSet invariants (duplicate abscissae,
/// non-finite values, mismatched lengths, empty input).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The fixed-order inverse-difference recursion hit a zero denominator.
class BreakdownError : public Error {
 public:
  explicit BreakdownError(std::size_t step);

  /// Level of the inverse difference whose denominator vanished.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Unscaled numerator/denominator recurrence left the representable range.
class OverflowDetected : public Error {
 public:
  using Error::Error;
};

class InvalidN : public Error {
 public:
  using Error::Error;
};

// io errors

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateAbscissa : public Error {
 public:
  DuplicateAbscissa(double x, std::size_t line);
  double x() const noexcept { return x_; }
  std::size_t line() const noexcept { return line_; }

 private:
  double x_;
  std::size_t line_;
};

class NonFiniteValue : public Error {
 public:
  explicit NonFiniteValue(std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class VersionMismatch : public Error {
 public:
  explicit VersionMismatch(long long found);
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace thiele
