#pragma once

#include "tsci/time_series.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace tsci {

struct EmbeddingParams {
  std::size_t lag = 1;  // tau, in samples
  std::size_t dim = 1;  // Q

  std::size_t span() const noexcept { return (dim - 1) * lag; }
  bool operator==(const EmbeddingParams&) const = default;
};

/// Delay vectors of a scalar series, newest sample first:
/// row t = [x(s), x(s - lag), ..., x(s - (dim - 1) lag)] with s = base_offset + t.
struct Embedding {
  Matrix points;
  EmbeddingParams params;
  std::size_t base_offset = 0;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(points.rows()); }
};

Embedding delay_embed(std::span<const double> values, EmbeddingParams params);
Embedding delay_embed(const TimeSeries& series, EmbeddingParams params);

/// Biased sample autocorrelation at lags 0..max_lag: lag-l products summed and
/// divided by N, then normalized by the population variance.
std::vector<double> autocorrelation(const TimeSeries& series, std::size_t max_lag);

struct LagSelection {
  std::size_t lag;
  bool capped;  // no lag below len/4 dropped under the threshold
};

inline constexpr double kDefaultAcfThreshold = 0.36787944117144233;  // 1/e

LagSelection select_lag(const TimeSeries& series, double threshold = kDefaultAcfThreshold);

struct FnnOptions {
  double distance_ratio = 15.0;  // R_tol
  // A_tol: lifted distance relative to the series std; infinity disables the test.
  double attractor_ratio = std::numeric_limits<double>::infinity();
  std::size_t theiler_window = 0;  // 0 means "use the lag"
};

/// Fraction of false nearest neighbors when going from `dim` to `dim + 1`.
double false_neighbor_fraction(const TimeSeries& series, std::size_t lag, std::size_t dim,
                               const FnnOptions& options = {});

struct DimensionSelection {
  std::size_t dim;
  bool saturated;                  // no dimension up to max_dim met the tolerance
  std::vector<double> fractions;   // fractions[q - 1] for q = 1..dim tested
};

inline constexpr double kDefaultFnnTolerance = 0.005;

DimensionSelection select_dimension_fnn(const TimeSeries& series, std::size_t lag, double tolerance,
                                        std::size_t max_dim, const FnnOptions& options = {});

}  // namespace tsci
