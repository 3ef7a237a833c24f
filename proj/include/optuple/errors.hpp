#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace optuple {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input (bad JSON, dimension mismatch, unknown name).
class InputError : public Error {
public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

// A documented precondition of an operation was violated.
class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// A class value violates the per-kind admissibility rules.
class AdmissibilityError : public Error {
public:
  explicit AdmissibilityError(const std::string& msg) : Error(msg) {}
};

// Requested scalar does not exist (ratio of incomparable classes).
class NotComparableError : public Error {
public:
  explicit NotComparableError(const std::string& msg) : Error(msg) {}
};

// Numeric input outside the representable regime (e.g. norm >= 1 for the
// inverse B-transform).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A rank or clustering decision could not be made unambiguously at the
// requested tolerance.  Carries the offending spectrum for diagnostics.
class ToleranceError : public Error {
public:
  ToleranceError(const std::string& msg, std::vector<double> spectrum)
      : Error(msg), spectrum_(std::move(spectrum)) {}
  const std::vector<double>& spectrum() const { return spectrum_; }

private:
  std::vector<double> spectrum_;
};

// Cross-checks inside a decomposition disagreed (signals tol too loose).
class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

}  // namespace optuple
