#pragma once

#include <stdexcept>
#include <string>

namespace shearbd {

enum class ErrorCode {
  // geometry
  CurvatureBoundViolated,
  RadiusBoundViolated,
  NotInsideUnitSquare,
  NotClosed,
  NotSimple,
  SlopeTooSteep,
  InconsistentDerivative,
  CornerPoint,
  NotOnBoundary,
  // cartoon
  NotNested,
  C2BoundExceeded,
  DomainTouchesUnitBoundary,
  SupportOutsideDomain,
  InvalidGrid,
  // generators
  NonConvergent,
  InvalidFilterOrder,
  // system
  IndexNotInSystem,
  GridMismatch,
  InvalidSystem,
  // frames
  NotAFrame,
  EquivalenceViolated,
  CGNotConverged,
  // approx
  NOutOfRange,
  InsufficientPoints,
  // theorycheck
  CornerInCube,
  NoCorners,
  // io
  ConfigInvalid,
  FormatError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shearbd
