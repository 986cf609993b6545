#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace autocong {

enum class ErrorCode {
  InvalidModulus,
  ModulusTooLarge,
  NotUnit,
  ArityMismatch,
  DigitOutOfRange,
  InvalidPartition,
  ParseError,
  DerivativeNotUnit,
  ConstantTermNonzero,
  StateExplosion,
  BaseMismatch,
  ArityUnsupported,
  PrecisionTooLow,
  ZeroPolynomial,
  DegenerateLeadingCoefficient,
  BadRootExponent,
  NotNormalized,
  FixtureValidationFailed,
  BudgetExceeded,
  PreconditionFailure,
  UnknownFixture,
  FormatError,
  IndexOverflow,
  VerificationFailed,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DerivativeNotUnit: return "DerivativeNotUnit";
    case ErrorCode::ConstantTermNonzero: return "ConstantTermNonzero";
    case ErrorCode::StateExplosion: return "StateExplosion";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::ArityUnsupported: return "ArityUnsupported";
    case ErrorCode::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::BadRootExponent: return "BadRootExponent";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::FixtureValidationFailed: return "FixtureValidationFailed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PreconditionFailure: return "PreconditionFailure";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IndexOverflow: return "IndexOverflow";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// All library failures are reported through this type; `code()` tells
/// callers which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace autocong
