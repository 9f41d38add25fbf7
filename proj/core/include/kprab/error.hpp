#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kprab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument or parameter tuple was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The result does not fit in a double; the natural log of the magnitude is kept.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, double log_value)
      : Error(what), log_value_(log_value) {}

  double log_value() const noexcept { return log_value_; }

 private:
  double log_value_;
};

/// A series did not reach its tolerance within the term cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double partial_value, std::size_t terms_used)
      : Error(what), partial_value_(partial_value), terms_used_(terms_used) {}

  double partial_value() const noexcept { return partial_value_; }
  std::size_t terms_used() const noexcept { return terms_used_; }

 private:
  double partial_value_;
  std::size_t terms_used_;
};

}  // namespace kprab
