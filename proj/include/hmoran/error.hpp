#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmoran {

enum class ErrorCode {
  NotStronglyConnected,
  NonPositiveFitness,
  BadDistribution,
  DanglingNode,
  SelfLoop,
  MultiEdge,
  BadInput,
  NegativeDelta,
  DirectedGraphUnsupported,
  TooLarge,
  SingularSystem,
  NotNeutral,
  NotUndirected,
  AllRunsCapped,
  NotApplicable,
  NoConvergence,
  EmptySet,
  EpsOutOfRange,
  ParamsOverflow,
  BadRange,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hmoran
