#include "maieutic/error.hpp"

namespace maieutic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::MissingFixture: return "MissingFixture";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::EmptyGeneration: return "EmptyGeneration";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::ArgmaxTie: return "ArgmaxTie";
    case ErrorCode::DegenerateBelief: return "DegenerateBelief";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::UnassignedVariable: return "UnassignedVariable";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::WeightOverflow: return "WeightOverflow";
    case ErrorCode::MissingGold: return "MissingGold";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message),
      line_(line) {}

}  // namespace maieutic
