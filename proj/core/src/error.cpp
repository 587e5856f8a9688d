#include "specshift/error.hpp"

namespace specshift {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::KernelConditionViolated: return "KernelConditionViolated";
    case ErrorCode::SingularCongruence: return "SingularCongruence";
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::SimplicityViolated: return "SimplicityViolated";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::DegenerateStart: return "DegenerateStart";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::GapTooSmall: return "GapTooSmall";
    case ErrorCode::ResolventViolation: return "ResolventViolation";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::BetaZero: return "BetaZero";
    case ErrorCode::ZeroEntry: return "ZeroEntry";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
      return ErrorClass::Parse;
    case ErrorCode::BranchAmbiguity:
    case ErrorCode::DegenerateStart:
    case ErrorCode::NoConvergence:
    case ErrorCode::GapTooSmall:
    case ErrorCode::ResolventViolation:
      return ErrorClass::Numerical;
    default:
      return ErrorClass::Invariant;
  }
}

Error::Error(ErrorCode code, std::string invariant, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + invariant +
                         (message.empty() ? "" : " (" + message + ")")),
      code_(code),
      invariant_(std::move(invariant)) {}

Error::Error(ErrorCode code, std::string invariant)
    : Error(code, std::move(invariant), std::string()) {}

}  // namespace specshift
