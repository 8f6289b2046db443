#ifndef DOFCOUNT_ERROR_HPP
#define DOFCOUNT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace dofcount {

enum class ErrorCode {
  DuplicateName,
  BadArity,
  EmptySpec,
  UnknownVariable,
  UnknownValue,
  EmptyDeck,
  EmptySubdeck,
  BadDimension,
  DegenerateDraw,
  DimensionMismatch,
  InvalidState,
  ZeroProbabilityOutcome,
  SingleVariable,
  SameVariable,
  RaggedMatrix,
  NonFinite,
  MalformedJson,
  SchemaViolation,
  InvalidArgument,
  InvariantViolation,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::EmptySpec: return "EmptySpec";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::UnknownValue: return "UnknownValue";
    case ErrorCode::EmptyDeck: return "EmptyDeck";
    case ErrorCode::EmptySubdeck: return "EmptySubdeck";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DegenerateDraw: return "DegenerateDraw";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case ErrorCode::SingleVariable: return "SingleVariable";
    case ErrorCode::SameVariable: return "SameVariable";
    case ErrorCode::RaggedMatrix: return "RaggedMatrix";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library. `field()` names the offending input
/// item when there is one (a variable name, a JSON key, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

  /// Internal invariant failures are the only errors that indicate a bug
  /// rather than bad input.
  bool is_internal() const noexcept { return code_ == ErrorCode::InvariantViolation; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace dofcount

#endif  // DOFCOUNT_ERROR_HPP
