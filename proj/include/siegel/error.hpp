#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

enum class ErrorCode {
  IterationFailure,
  NotPositiveDefinite,
  SingularFactor,
  SingularMatrix,
  NonTermination,
  NonIntegral,
  UnsupportedWeight,
  MismatchedRep,
  Divergence,
  InvalidExponent,
  InvalidArgument,
  MalformedInput,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IterationFailure: return "iteration failure";
    case ErrorCode::NotPositiveDefinite: return "not positive definite";
    case ErrorCode::SingularFactor: return "singular automorphy factor";
    case ErrorCode::SingularMatrix: return "singular matrix";
    case ErrorCode::NonTermination: return "non-termination";
    case ErrorCode::NonIntegral: return "non-integral";
    case ErrorCode::UnsupportedWeight: return "unsupported weight";
    case ErrorCode::MismatchedRep: return "mismatched representation";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::InvalidExponent: return "invalid exponent";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::MalformedInput: return "malformed input";
  }
  return "error";
}

}  // namespace siegel
