#include "hmoran/error.hpp"

namespace hmoran {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::NonPositiveFitness: return "NonPositiveFitness";
    case ErrorCode::BadDistribution: return "BadDistribution";
    case ErrorCode::DanglingNode: return "DanglingNode";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::MultiEdge: return "MultiEdge";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::NegativeDelta: return "NegativeDelta";
    case ErrorCode::DirectedGraphUnsupported: return "DirectedGraphUnsupported";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotNeutral: return "NotNeutral";
    case ErrorCode::NotUndirected: return "NotUndirected";
    case ErrorCode::AllRunsCapped: return "AllRunsCapped";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::ParamsOverflow: return "ParamsOverflow";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hmoran
