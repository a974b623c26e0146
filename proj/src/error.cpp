#include "tsci/error.hpp"

namespace tsci {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::InvalidFilterConfig: return "InvalidFilterConfig";
    case ErrorCode::AlignmentMismatch: return "AlignmentMismatch";
    case ErrorCode::NotEnoughNeighbors: return "NotEnoughNeighbors";
    case ErrorCode::DegenerateNeighborhood: return "DegenerateNeighborhood";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::AllRowsDegenerate: return "AllRowsDegenerate";
    case ErrorCode::LibraryTooLong: return "LibraryTooLong";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonUniformSampling: return "NonUniformSampling";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateNeighborhood:
    case ErrorCode::SingularGram:
    case ErrorCode::AllRowsDegenerate:
    case ErrorCode::SingularDesign:
    case ErrorCode::Divergence:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace tsci
