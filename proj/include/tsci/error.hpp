#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsci {

enum class ErrorCode {
  InvalidArgument,
  SeriesTooShort,
  ZeroVariance,
  InvalidFilterConfig,
  AlignmentMismatch,
  NotEnoughNeighbors,
  DegenerateNeighborhood,
  SingularGram,
  AllRowsDegenerate,
  LibraryTooLong,
  SingularDesign,
  TooFewSamples,
  Divergence,
  ParseError,
  NonUniformSampling,
  EmptyFile,
  EmptyInput,
};

std::string_view to_string(ErrorCode code);

/// True for failures of the numerics (divergence, degenerate geometry,
/// singular systems) as opposed to bad input data.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsci
