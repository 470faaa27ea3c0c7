#pragma once

#include <stdexcept>
#include <string>

namespace cobound {

enum class ErrorCode {
  EmptyInput,
  NotPure,
  FaceNotFound,
  UnknownVertex,
  DimensionMismatch,
  Inconsistent,
  BudgetExceeded,
  FillFailed,
  MissingChain,
  DivisibilityViolated,
  NotAMatroid,
  NotBasisTransitive,
  NotAnAutomorphism,
  NonPrimeField,
  InvalidArgument,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. The code drives CLI exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cobound
