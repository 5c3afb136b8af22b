#pragma once

#include <stdexcept>
#include <string>

namespace pirg {

// Root of the toolkit's exception hierarchy. The CLI maps subclasses onto
// exit codes (ParseError/ArgumentError -> 2, CapacityError -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coordinate outside the admissible domain of a kernel operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Vertex or cell index outside [1, n] or violating i <= j / i < j.
class IndexError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or input document. `field()` names the offending
// field (e.g. "kernel.matrix[1][0]").
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Exceeds a size limit (exact oracle n > 16, memory or work caps).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed to reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// nu0 = 0: the kernel has no finite connectivity threshold in the
// t = c n log n parametrization.
class NoThresholdError : public Error {
 public:
  using Error::Error;
};

}  // namespace pirg
