#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kerrosc {

enum class ErrorKind {
  InvalidArgument,
  CutoffTooSmall,
  IndexOutOfRange,
  ZeroNorm,
  DriftTooLarge,
  DimensionMismatch,
  CutoffExceeded,
  StepSizeUnderflow,
  NegativeDiagonal,
  EigSolverFailure,
  SupportMismatch,
  InvalidOrder,
  SParamOutOfRange,
  NonpositiveKs,
  PoleAtNonpositiveInteger,
  NonconvergenceWithinMaxTerms,
  KerrZero,
  UnstableLinearization,
  UnphysicalMoments,
  ZeroSeparation,
  ConfigInvalid,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kerrosc
