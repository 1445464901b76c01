#include "chowliu/error.hpp"

namespace chowliu {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::OutcomeMismatch: return "OutcomeMismatch";
    case ErrorCode::SharedMarginalMismatch: return "SharedMarginalMismatch";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NotSymmetricModel: return "NotSymmetricModel";
    case ErrorCode::CityNotConnected: return "CityNotConnected";
    case ErrorCode::TooLargeForExact: return "TooLargeForExact";
    case ErrorCode::ModelDimensionMismatch: return "ModelDimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace chowliu
