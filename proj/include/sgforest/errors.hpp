#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgforest {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid genus bound, flag combination or policy.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Membership or gap data that is not a numerical semigroup.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Descent past the configured genus bound.
class OutOfBoundError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed checkpoint or counts file; line is 1-based, 0 when unknown.
class LoadError : public Error {
 public:
  LoadError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sgforest
