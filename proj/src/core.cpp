#include "fuzzy/core.hpp"

namespace fuzzy {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::DeltaHasNoDensity: return "DeltaHasNoDensity";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::UnsupportedAnalyticKind: return "UnsupportedAnalyticKind";
    case ErrorCode::DimTooSmall: return "DimTooSmall";
    case ErrorCode::ZeroRatio: return "ZeroRatio";
    case ErrorCode::NonPositiveRatio: return "NonPositiveRatio";
    case ErrorCode::DegenerateC: return "DegenerateC";
    case ErrorCode::NonConvergentSeries: return "NonConvergentSeries";
    case ErrorCode::TailTooFat: return "TailTooFat";
    case ErrorCode::TruncationOverflow: return "TruncationOverflow";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::DisplacementTooLarge: return "DisplacementTooLarge";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NonPositiveOmega: return "NonPositiveOmega";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace fuzzy
