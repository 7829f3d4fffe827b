#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cgm {

enum class ErrorCode {
  CompositionMismatch,
  ForeignMorphism,
  UnknownObject,
  SymbolicObjects,
  DanglingEdge,
  MalformedPayload,
  InconsistentContinuationIndex,
  NoTwoCell,
  NotInSubcategory,
  SamplerUnavailable,
  SpawnGradeError,
  DomainMismatch,
  InvalidImplication,
  RangeError,
  NotDiscrete,
  NotIndiscrete,
  DinaturalityFailure,
  WrongShape,
  NotBottom,
  InfeasibleEnd,
  ParseError,
  GradeMismatch,
  UnknownPrim,
  RuntimeError,
  RuleMismatch,
  BoundViolation,
  UnknownInstance,
  InvalidValue,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCode::ParseError,
              std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cgm
