#pragma once

#include <stdexcept>
#include <string>

namespace bs {

// Failure taxonomy. Config-shaped problems exit 2 at the CLI, oracle/cap
// limits exit 3, everything else is a hard error.
enum class ErrorCode {
  ZeroParameter,
  PresentationMismatch,
  WrongClass,
  ParseError,
  WeightSumError,
  DuplicateSupport,
  ConfigError,
  OracleUnresolved,
  CapExceeded,
  TruncationError,
  DepthTooDeep,
  NotAdjacent,
  DegenerateStrip,
  MembershipError,
  WrongDrift,
  InsufficientSamples,
  IOError,
  InternalError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::PresentationMismatch: return "PresentationMismatch";
    case ErrorCode::WrongClass: return "WrongClass";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::WeightSumError: return "WeightSumError";
    case ErrorCode::DuplicateSupport: return "DuplicateSupport";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::OracleUnresolved: return "OracleUnresolved";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::TruncationError: return "TruncationError";
    case ErrorCode::DepthTooDeep: return "DepthTooDeep";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::DegenerateStrip: return "DegenerateStrip";
    case ErrorCode::MembershipError: return "MembershipError";
    case ErrorCode::WrongDrift: return "WrongDrift";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::IOError: return "IOError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
  throw Error(c, std::string(error_name(c)) + ": " + msg);
}

}  // namespace bs
