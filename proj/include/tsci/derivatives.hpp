#pragma once

#include "tsci/embedding.hpp"
#include "tsci/time_series.hpp"

#include <cstddef>
#include <string_view>

namespace tsci {

enum class DerivativeMethod { Forward, Central, SavitzkyGolay };

std::string_view to_string(DerivativeMethod method);
DerivativeMethod parse_derivative_method(std::string_view name);

enum class FiniteDifference { Forward, Central };

/// Forward: (x[t+1] - x[t]) / dt, length N - 1.
/// Central: (x[t+1] - x[t-1]) / (2 dt) with second-order one-sided stencils at
/// both ends, length N.
TimeSeries derivative_series(const TimeSeries& series, FiniteDifference scheme);

/// First derivative of the local least-squares polynomial fit. Near the ends
/// the terminal window is reused and its fit is differentiated off-center, so
/// the output has the same length as the input.
TimeSeries savgol_derivative(const TimeSeries& series, std::size_t window, std::size_t polyorder);

/// Savitzky-Golay weights for the first derivative at `position` (relative to
/// the window center, in samples) with unit sample spacing.
Vector savgol_weights(std::size_t window, std::size_t polyorder, int position);

struct DerivativeConfig {
  DerivativeMethod method = DerivativeMethod::Central;
  std::size_t window = 5;
  std::size_t polyorder = 2;
};

TimeSeries estimate_derivative(const TimeSeries& series, const DerivativeConfig& config);

/// Tangent-vector estimates row-aligned with an Embedding of the same params.
struct VectorFieldSamples {
  Matrix vectors;
  DerivativeMethod method = DerivativeMethod::Central;
  std::size_t base_offset = 0;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(vectors.rows()); }
};

/// Delay-embeds a derivative series (which starts at the source's index 0)
/// with the same lag/dimension as the state embedding.
VectorFieldSamples vector_field_for_embedding(const TimeSeries& deriv, EmbeddingParams params,
                                              DerivativeMethod method);

/// Truncates both to their common row range. Throws AlignmentMismatch when
/// the two do not describe the same time indices and dimension.
void align_rows(Embedding& embedding, VectorFieldSamples& field);

}  // namespace tsci
