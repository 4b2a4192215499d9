#include "kframe/error.hpp"

namespace kframe {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::NonRealSequence: return "NonRealSequence";
    case ErrorCode::ZeroK: return "ZeroK";
    case ErrorCode::ZeroScalar: return "ZeroScalar";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::CommutationFailed: return "CommutationFailed";
    case ErrorCode::DivideByZero: return "DivideByZero";
    case ErrorCode::NotConfined: return "NotConfined";
    case ErrorCode::BadAlphaBeta: return "BadAlphaBeta";
    case ErrorCode::BadBeta: return "BadBeta";
    case ErrorCode::BadM: return "BadM";
    case ErrorCode::BadLambda: return "BadLambda";
    case ErrorCode::NotKFrame: return "NotKFrame";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IntertwiningFailed: return "IntertwiningFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedName: return "UnresolvedName";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace kframe
