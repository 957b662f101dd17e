#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>

namespace labelprop {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A text input line could not be parsed. Carries the 1-based line number.
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
  std::size_t line_number;
};

/// Unsupported or malformed file header / container format.
struct FormatError : Error {
  using Error::Error;
};

/// Data violates a contract (entry counts, negative weights, stale fields).
struct ValidationError : Error {
  using Error::Error;
};

/// A vertex id lies outside the declared or supported range.
struct BoundsError : Error {
  using Error::Error;
};

/// Invalid algorithm or generator configuration.
struct ConfigError : Error {
  using Error::Error;
};

/// A quality score is undefined for the given input (e.g. zero total weight).
struct QualityError : Error {
  using Error::Error;
};

/// A file could not be opened or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace labelprop
