#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qra {

enum class ErrorKind {
  UnknownObject,
  UnknownMeasurand,
  UnknownCondition,
  EmptyGroup,
  MixedGroup,
  InvalidSampleSize,
  ValueBelowScale,
  DegenerateMean,
  InvalidProbability,
  InvalidDf,
  InvalidArgument,
  InvalidParameters,
  ParseError,
  SchemaError,
  ValidationError,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library. The kind is what
/// callers branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed input file. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::ParseError, format(message, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace qra
