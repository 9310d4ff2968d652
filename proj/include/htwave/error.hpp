#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace htwave {

enum class ErrorCode {
  UnsupportedFamily,
  DimensionMismatch,
  NonpositiveScale,
  GridTooSmall,
  GridTooCoarse,
  UnsupportedDimension,
  DecayViolation,
  NonRadialInput,
  SummabilityViolation,
  WindowTooNarrow,
  ToleranceNotReached,
  DeclaredBoundViolated,
  DegenerateInput,
  GridInsufficient,
  InvalidArgument,
  ExcludedEndpoint,
  NotAdmissible,
  OutOfRange,
  TailNotConverged,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; `code()` names the
// violated contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace htwave
