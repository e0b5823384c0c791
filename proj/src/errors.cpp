#include "theme/errors.hpp"

namespace theme {

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::Obstruction: return "Obstruction";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::NotATheme: return "NotATheme";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::DeltaTooSmall: return "DeltaTooSmall";
    case ErrorCode::ShiftTooNegative: return "ShiftTooNegative";
    case ErrorCode::WrongRank: return "WrongRank";
    case ErrorCode::RankJump: return "RankJump";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AmbiguousNormalization: return "AmbiguousNormalization";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

ObstructionError::ObstructionError(long degree, Rational value)
    : Error(ErrorCode::Obstruction,
            "obstruction at b^" + std::to_string(degree) + ": coefficient " + to_string(value)),
      degree_(degree),
      value_(std::move(value)) {}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : Error(ErrorCode::ParseError, msg + " (at " + std::to_string(pos) + ")"), pos_(pos) {}

}  // namespace theme
