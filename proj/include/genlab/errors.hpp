#pragma once

#include <stdexcept>
#include <string>

namespace genlab {

// Base class for all library errors; CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MetricViolation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, int iterations)
      : Error(what + " (iterations=" + std::to_string(iterations) + ")"),
        iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

class SpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class EnumerationCapExceeded : public Error {
 public:
  using Error::Error;
};

class NonpositiveBound : public Error {
 public:
  using Error::Error;
};

class ZeroDistance : public Error {
 public:
  using Error::Error;
};

class NoPath : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace genlab
