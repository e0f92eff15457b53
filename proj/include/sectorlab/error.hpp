#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sectorlab {

enum class ErrorKind {
  SingularMatrix,
  IllConditioned,
  NoConvergence,
  NotPositiveDefinite,
  NotAccretive,
  DimensionMismatch,
  InvalidNodeCount,
  InvalidParameters,
  InvalidWeight,
  InvalidScalar,
  InvalidArgument,
  EvaluationFailure,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library. The kind is what
/// callers (the CLI exit-code mapping in particular) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sectorlab
