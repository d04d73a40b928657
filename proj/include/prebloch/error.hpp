#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prebloch {

enum class ErrorCode {
  ZeroDivisor,
  FieldMismatch,
  FactorizationUnsupported,
  NotAUnit,
  ZeroElement,
  ShapeMismatch,
  NotAUnitModF,
  NotInFiltration,
  NotInKernel,
  OutsideSpecialCase,
  NotAFiveTerm,
  UnknownSuite,
  DegenerateParameter,
  DegenerateConfiguration,
  NearSingularity,
  NonConvergence,
  SyntaxError,
  Unsupported,
  InvalidArgument,
  ResampleExhausted,
};

inline std::string_view error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::FactorizationUnsupported: return "FactorizationUnsupported";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAUnitModF: return "NotAUnitModF";
    case ErrorCode::NotInFiltration: return "NotInFiltration";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::OutsideSpecialCase: return "OutsideSpecialCase";
    case ErrorCode::NotAFiveTerm: return "NotAFiveTerm";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NearSingularity: return "NearSingularity";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ResampleExhausted: return "ResampleExhausted";
  }
  return "Unknown";
}

/// All library failures are reported through this type; `code()` is the
/// stable machine-readable part, `what()` carries the human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace prebloch
