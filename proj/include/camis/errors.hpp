#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace camis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input carrying unusable values (non-finite samples, irregular lattice...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Requested extent does not fit the available data.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Slip curve reached its singular value (s_r -> 1 or s_a -> pi/2).
class SlipSingularityError : public Error {
 public:
  using Error::Error;
};

/// The conic has no positive root for some heading.
class InvalidEllipseError : public Error {
 public:
  using Error::Error;
};

/// Frontier exhausted before the two wavefronts met.
class UnreachableError : public Error {
 public:
  using Error::Error;
};

/// Path integration exceeded its step budget.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration file or option.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace camis
