#pragma once

#include <stdexcept>
#include <string>

namespace gridatlas {

enum class ErrorCode {
  NotPermutation,
  SharedSquare,
  SizeMismatch,
  Parse,
  MultiComponent,
  IllegalCommutation,
  IllegalMove,
  TooManyCrossings,
  InvalidLetter,
  HalfIntegralJones,
  InvariantMismatch,
  NonZeroRotation,
  Disconnected,
  InconsistentPotential,
  Io,
  NotFound,
  InvalidArgument,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPermutation: return "NotPermutation";
    case ErrorCode::SharedSquare: return "SharedSquare";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::MultiComponent: return "MultiComponent";
    case ErrorCode::IllegalCommutation: return "IllegalCommutation";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::TooManyCrossings: return "TooManyCrossings";
    case ErrorCode::InvalidLetter: return "InvalidLetter";
    case ErrorCode::HalfIntegralJones: return "HalfIntegralJones";
    case ErrorCode::InvariantMismatch: return "InvariantMismatch";
    case ErrorCode::NonZeroRotation: return "NonZeroRotation";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InconsistentPotential: return "InconsistentPotential";
    case ErrorCode::Io: return "Io";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error raised by every gridatlas operation that can fail on valid input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(gridatlas::to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gridatlas
