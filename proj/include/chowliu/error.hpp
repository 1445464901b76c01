#pragma once

#include <stdexcept>
#include <string>

namespace chowliu {

enum class ErrorCode {
  CycleDetected,
  Disconnected,
  ProbabilityOutOfRange,
  DimensionMismatch,
  NodeOutOfRange,
  OutcomeMismatch,
  SharedMarginalMismatch,
  EmptySample,
  RaggedRows,
  NotSymmetricModel,
  CityNotConnected,
  TooLargeForExact,
  ModelDimensionMismatch,
  InvalidArgument,
  ParseError,
  IoError,
  ConfigError,
};

const char* to_string(ErrorCode code);

// All library failures surface as this exception; code() identifies the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chowliu
