#pragma once

#include <stdexcept>
#include <string>

namespace pdp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed partitions or other precondition failures.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Pochhammer product hit an exact zero factor.
class DegeneratePochhammer : public Error {
 public:
  using Error::Error;
};

/// A cached table does not cover the requested coordinates.
class CoverageError : public DomainError {
 public:
  CoverageError(const std::string& what, long n, long t)
      : DomainError(what + " (n=" + std::to_string(n) + ", t=" + std::to_string(t) + ")"),
        n_(n),
        t_(t) {}

  long n() const { return n_; }
  long t() const { return t_; }

 private:
  long n_;
  long t_;
};

/// A computation would exceed a configured memory cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Result rejected because floating-point cancellation made it unreliable.
class NumericalInstability : public Error {
 public:
  using Error::Error;
};

}  // namespace pdp
