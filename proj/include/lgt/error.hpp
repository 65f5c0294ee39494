#pragma once

#include <stdexcept>
#include <string>

namespace lgt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A Hilbert space or dense workspace would exceed the configured cap.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, double requested, double limit)
      : Error(what + " (requested " + std::to_string(requested) + ", limit " +
              std::to_string(limit) + ")"),
        requested_(requested),
        limit_(limit) {}

  double requested() const noexcept { return requested_; }
  double limit() const noexcept { return limit_; }

 private:
  double requested_;
  double limit_;
};

/// A numerical check (Hermiticity, unitarity, convergence) failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgt
