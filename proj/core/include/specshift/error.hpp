#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specshift {

enum class ErrorCode {
  Parse,
  NotHermitian,
  DimensionMismatch,
  InvalidArgument,
  InvalidPartition,
  KernelConditionViolated,
  SingularCongruence,
  InvalidFamily,
  SimplicityViolated,
  BranchAmbiguity,
  DegenerateStart,
  NoConvergence,
  GapTooSmall,
  ResolventViolation,
  InvalidGraph,
  Disconnected,
  BetaZero,
  ZeroEntry,
};

// Coarse classes used to pick a process exit code.
enum class ErrorClass { Parse, Invariant, Numerical };

std::string_view to_string(ErrorCode code);
ErrorClass classify(ErrorCode code);

// Every failure carries a code and the name of the violated invariant so
// callers can emit structured error records.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string invariant, const std::string& message);
  Error(ErrorCode code, std::string invariant);

  ErrorCode code() const noexcept { return code_; }
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  ErrorCode code_;
  std::string invariant_;
};

}  // namespace specshift
