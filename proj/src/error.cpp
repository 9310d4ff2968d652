#include "htwave/error.hpp"

namespace htwave {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::DecayViolation: return "DecayViolation";
    case ErrorCode::NonRadialInput: return "NonRadialInput";
    case ErrorCode::SummabilityViolation: return "SummabilityViolation";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::DeclaredBoundViolated: return "DeclaredBoundViolated";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::GridInsufficient: return "GridInsufficient";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ExcludedEndpoint: return "ExcludedEndpoint";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TailNotConverged: return "TailNotConverged";
  }
  return "Unknown";
}

}  // namespace htwave
