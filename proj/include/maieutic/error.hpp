#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace maieutic {

enum class ErrorCode {
  BackendUnavailable,
  MissingFixture,
  MalformedResponse,
  EmptyGeneration,
  NotSupported,
  CacheCorrupt,
  ArgmaxTie,
  DegenerateBelief,
  EmptyTree,
  UnassignedVariable,
  TooManyVariables,
  ParseError,
  WeightOverflow,
  MissingGold,
  InvalidConfig,
  InvalidTree,
  NonFiniteValue,
};

std::string_view to_string(ErrorCode code);

// Domain failures. Precondition violations throw std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace maieutic
