#pragma once

#include <stdexcept>
#include <string>

namespace rydcp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive numerical procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::string tag, double estimate)
      : Error(what), tag_(std::move(tag)), estimate_(estimate) {}

  const std::string& tag() const noexcept { return tag_; }
  double estimate() const noexcept { return estimate_; }

 private:
  std::string tag_;
  double estimate_;
};

}  // namespace rydcp
