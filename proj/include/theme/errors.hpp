#pragma once

#include <stdexcept>
#include <string>

#include "theme/scalar.hpp"

namespace theme {

enum class ErrorCode {
  NonInvertible,
  Obstruction,
  PrecisionExhausted,
  NotInImage,
  NotInSpan,
  NotATheme,
  InvalidPresentation,
  DeltaTooSmall,
  ShiftTooNegative,
  WrongRank,
  RankJump,
  ParseError,
  AmbiguousNormalization,
  InvalidInput,
};

const char* code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// b T' - m T = rhs has no solution: coefficient of b^degree in rhs is value.
class ObstructionError : public Error {
 public:
  ObstructionError(long degree, Rational value);
  long degree() const { return degree_; }
  const Rational& value() const { return value_; }

 private:
  long degree_;
  Rational value_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace theme
