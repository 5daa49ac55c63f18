#pragma once

#include <stdexcept>
#include <string>

namespace r0col {

enum class ErrorCode {
  InvalidArgument,
  SingularMatrix,
  NoConvergence,
  EvenN,
  MeshModelMismatch,
  SingularMN,
  NoRealDominant,
  SingularAveragedM,
  StepSizeUnderflow,
  BracketFailure,
  Config,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EvenN: return "EvenN";
    case ErrorCode::MeshModelMismatch: return "MeshModelMismatch";
    case ErrorCode::SingularMN: return "SingularMN";
    case ErrorCode::NoRealDominant: return "NoRealDominant";
    case ErrorCode::SingularAveragedM: return "SingularAveragedM";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace r0col
