#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kframe {

enum class ErrorCode {
  NotSelfAdjoint,
  NotPSD,
  NonFinite,
  BadSpec,
  DimensionMismatch,
  SpaceMismatch,
  NonRealSequence,
  ZeroK,
  ZeroScalar,
  ZeroOperator,
  ZeroPolynomial,
  NotInvertible,
  CommutationFailed,
  DivideByZero,
  NotConfined,
  BadAlphaBeta,
  BadBeta,
  BadM,
  BadLambda,
  NotKFrame,
  IndexOutOfRange,
  IntertwiningFailed,
  ParseError,
  UnresolvedName,
  BadConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kframe
