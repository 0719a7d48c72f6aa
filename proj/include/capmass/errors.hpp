#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace capmass {

enum class ErrorCode {
  kInvalidArgument,
  kNonPositiveConformalFactor,
  kSlowDecay,
  kDivergentIntegral,
  kNonConvergence,
  kDegenerateHorizon,
  kZeroMeanCurvature,
  kAlphaOutOfRange,
  kNotStatic,
  kEqualityGapExceeded,
  kFluxDrift,
  kNegativeScalarCurvature,
  kParseError,
  kCheckFailure,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Solver/extraction failures, as opposed to bad input or failed assertions.
  bool is_numerics() const noexcept;

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, int line, std::string field, const std::string& message);

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace capmass
