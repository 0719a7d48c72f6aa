#include "capmass/errors.hpp"

namespace capmass {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonPositiveConformalFactor: return "NonPositiveConformalFactor";
    case ErrorCode::kSlowDecay: return "SlowDecay";
    case ErrorCode::kDivergentIntegral: return "DivergentIntegral";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kDegenerateHorizon: return "DegenerateHorizon";
    case ErrorCode::kZeroMeanCurvature: return "ZeroMeanCurvature";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kNotStatic: return "NotStatic";
    case ErrorCode::kEqualityGapExceeded: return "EqualityGapExceeded";
    case ErrorCode::kFluxDrift: return "FluxDrift";
    case ErrorCode::kNegativeScalarCurvature: return "NegativeScalarCurvature";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kCheckFailure: return "CheckFailure";
  }
  return "Unknown";
}

bool Error::is_numerics() const noexcept {
  switch (code_) {
    case ErrorCode::kSlowDecay:
    case ErrorCode::kDivergentIntegral:
    case ErrorCode::kNonConvergence:
    case ErrorCode::kFluxDrift:
    case ErrorCode::kNonPositiveConformalFactor:
      return true;
    default:
      return false;
  }
}

ParseError::ParseError(std::string source, int line, std::string field, const std::string& message)
    : Error(ErrorCode::kParseError,
            source + ":" + std::to_string(line) + (field.empty() ? "" : " [" + field + "]") + ": " +
                message),
      line_(line),
      field_(std::move(field)) {}

}  // namespace capmass
