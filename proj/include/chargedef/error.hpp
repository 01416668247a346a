#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chargedef {

enum class ErrorKind {
  CapacityExceeded,
  DomainError,
  DimensionMismatch,
  IndexOutOfRange,
  NotOnSphere,
  InvalidEpsilon,
  ParseError,
  NotFredholm,
  NotStabilized,
  NotUnitarySymbol,
  NotConverged,
  NotInvertibleOnCircle,
  QuadratureNotConverged,
  MismatchExceedsTolerance,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` is the
/// machine-readable category that the CLI maps onto exit codes and error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace chargedef
