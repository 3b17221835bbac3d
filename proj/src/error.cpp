#include "shearbd/error.hpp"

namespace shearbd {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CurvatureBoundViolated: return "CurvatureBoundViolated";
    case ErrorCode::RadiusBoundViolated: return "RadiusBoundViolated";
    case ErrorCode::NotInsideUnitSquare: return "NotInsideUnitSquare";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::SlopeTooSteep: return "SlopeTooSteep";
    case ErrorCode::InconsistentDerivative: return "InconsistentDerivative";
    case ErrorCode::CornerPoint: return "CornerPoint";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::C2BoundExceeded: return "C2BoundExceeded";
    case ErrorCode::DomainTouchesUnitBoundary: return "DomainTouchesUnitBoundary";
    case ErrorCode::SupportOutsideDomain: return "SupportOutsideDomain";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::InvalidFilterOrder: return "InvalidFilterOrder";
    case ErrorCode::IndexNotInSystem: return "IndexNotInSystem";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::EquivalenceViolated: return "EquivalenceViolated";
    case ErrorCode::CGNotConverged: return "CGNotConverged";
    case ErrorCode::NOutOfRange: return "NOutOfRange";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::CornerInCube: return "CornerInCube";
    case ErrorCode::NoCorners: return "NoCorners";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

}  // namespace shearbd
