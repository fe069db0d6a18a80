#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

// Errors carry a short machine-readable code. The CLI maps ValidationError
// to exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Bad input: contract violations, malformed files, infeasible parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical machinery failed in a way valid input should never trigger.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphon
