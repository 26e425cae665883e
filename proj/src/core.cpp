#include "hmlab/core.hpp"

namespace hmlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorCode::TurningNumberMismatch: return "TurningNumberMismatch";
    case ErrorCode::InvalidAxes: return "InvalidAxes";
    case ErrorCode::PointNotOnBoundary: return "PointNotOnBoundary";
    case ErrorCode::PointOutside: return "PointOutside";
    case ErrorCode::NonPositiveSpeed: return "NonPositiveSpeed";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::OutsideOpenDisk: return "OutsideOpenDisk";
    case ErrorCode::VanishingFz: return "VanishingFz";
    case ErrorCode::NonPositiveJacobian: return "NonPositiveJacobian";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::NotHarmonic: return "NotHarmonic";
    case ErrorCode::HessianTooSmall: return "HessianTooSmall";
    case ErrorCode::OutsideBall: return "OutsideBall";
    case ErrorCode::EvaluationOutOfDomain: return "EvaluationOutOfDomain";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::OriginSingularity: return "OriginSingularity";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NonConvexCurve: return "NonConvexCurve";
    case ErrorCode::DegenerateSpeed: return "DegenerateSpeed";
    case ErrorCode::NonMonotoneInput: return "NonMonotoneInput";
    case ErrorCode::HypothesisUnverifiable: return "HypothesisUnverifiable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownClaim: return "UnknownClaim";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::NumericsError: return "NumericsError";
  }
  return "Unknown";
}

}  // namespace hmlab
