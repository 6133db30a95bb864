#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zetalab {

enum class ErrorCode {
  // validation
  InvalidArgument,
  UnknownConfigKey,
  ParseError,
  // arithmetic
  DivisionByZero,
  LogOfZero,
  Overflow,
  // oracle
  Pole,
  Degenerate,
  PrecisionUnreachable,
  // coefficient solver
  NearZeroRow,
  SingularMatrix,
  ResidualTooLarge,
  NoCrossing,
  // sigmoid / convergent series
  NegativeRadicand,
  RealAxis,
  NonPositiveScale,
  NoInteriorMinimum,
  DegenerateFit,
  NonPositiveValue,
  // io
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code decides the CLI exit status:
/// validation problems map to 2, numerical failures to 3.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool is_validation() const noexcept {
    return code_ == ErrorCode::InvalidArgument || code_ == ErrorCode::UnknownConfigKey ||
           code_ == ErrorCode::ParseError;
  }

 private:
  ErrorCode code_;
};

}  // namespace zetalab
