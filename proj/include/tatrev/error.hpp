#pragma once

#include <stdexcept>
#include <string>

namespace tatrev {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two objects that must live on the same grid do not.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Time step violates the CFL bound of the explicit scheme.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent run parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Requested combination is valid but not supported by this solver.
class UnsupportedConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Array or file dimensions disagree with the configured grid.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tatrev
