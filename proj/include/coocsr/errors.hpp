#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coocsr {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A COO input violated the dimension/bounds conditions.
class NotWellFormed : public Error {
 public:
  using Error::Error;
};

/// Distinct-coordinate count or row count does not fit the configured index bound.
class CapacityBound : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The brute-force sum oracle refuses inputs longer than its cap.
class LengthCapExceeded : public Error {
 public:
  LengthCapExceeded(std::size_t length, std::size_t cap)
      : Error("sum_any enumeration: " + std::to_string(length) +
              " values exceeds cap " + std::to_string(cap)),
        length_(length),
        cap_(cap) {}

  std::size_t length() const noexcept { return length_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t length_;
  std::size_t cap_;
};

/// Malformed text input. Line and column are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) +
              (column ? ", column " + std::to_string(column) : std::string{}) +
              ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Matrix Market variant we deliberately do not expand (pattern, complex, symmetric, ...).
class UnsupportedVariant : public Error {
 public:
  using Error::Error;
};

/// A file entry lies outside the declared dimensions.
class BoundsError : public Error {
 public:
  BoundsError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace coocsr
