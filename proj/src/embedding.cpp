#include "tsci/embedding.hpp"

#include "tsci/error.hpp"
#include "tsci/neighbors.hpp"

#include <cmath>
#include <string>

namespace tsci {

namespace {

void check_params(EmbeddingParams params) {
  if (params.lag < 1 || params.dim < 1) {
    throw Error(ErrorCode::InvalidArgument, "embedding lag and dimension must be >= 1");
  }
}

}  // namespace

Embedding delay_embed(std::span<const double> values, EmbeddingParams params) {
  check_params(params);
  const std::size_t span = params.span();
  if (values.size() <= span) {
    throw Error(ErrorCode::SeriesTooShort, "series of length " + std::to_string(values.size()) +
                                               " cannot be embedded with lag " + std::to_string(params.lag) +
                                               " and dimension " + std::to_string(params.dim));
  }
  const std::size_t rows = values.size() - span;
  Embedding e;
  e.params = params;
  e.base_offset = span;
  e.points.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(params.dim));
  for (std::size_t t = 0; t < rows; ++t) {
    const std::size_t s = span + t;
    for (std::size_t q = 0; q < params.dim; ++q) {
      e.points(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(q)) = values[s - q * params.lag];
    }
  }
  return e;
}

Embedding delay_embed(const TimeSeries& series, EmbeddingParams params) {
  return delay_embed(series.values(), params);
}

std::vector<double> autocorrelation(const TimeSeries& series, std::size_t max_lag) {
  const std::size_t n = series.size();
  const double mean = series.mean();
  const double var = series.variance();
  if (!(var > 0.0)) throw Error(ErrorCode::ZeroVariance, "autocorrelation of a constant series");
  max_lag = std::min(max_lag, n - 1);
  std::vector<double> acf(max_lag + 1);
  for (std::size_t l = 0; l <= max_lag; ++l) {
    double s = 0.0;
    for (std::size_t t = 0; t + l < n; ++t) s += (series[t] - mean) * (series[t + l] - mean);
    acf[l] = s / static_cast<double>(n) / var;
  }
  return acf;
}

LagSelection select_lag(const TimeSeries& series, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "autocorrelation threshold must lie in (0, 1)");
  }
  const std::size_t cap = std::max<std::size_t>(1, series.size() / 4);
  const std::vector<double> acf = autocorrelation(series, cap);
  for (std::size_t l = 1; l < acf.size(); ++l) {
    if (acf[l] < threshold) return {l, false};
  }
  return {cap, true};
}

double false_neighbor_fraction(const TimeSeries& series, std::size_t lag, std::size_t dim,
                               const FnnOptions& options) {
  const EmbeddingParams lifted{lag, dim + 1};
  if (series.size() <= lifted.span() + 1) {
    throw Error(ErrorCode::SeriesTooShort, "series too short for false-neighbor test at dimension " +
                                               std::to_string(dim + 1));
  }
  // Rows of the (dim+1) embedding; their first `dim` columns are the dim-embedding
  // at the same time index, the last column is the lifted coordinate.
  const Embedding full = delay_embed(series, lifted);
  const Matrix base = full.points.leftCols(static_cast<Eigen::Index>(dim));
  const auto lifted_col = full.points.col(static_cast<Eigen::Index>(dim));
  const double sigma = std::sqrt(series.variance());
  if (!(sigma > 0.0)) throw Error(ErrorCode::ZeroVariance, "false neighbors of a constant series");

  const std::size_t window = options.theiler_window == 0 ? lag : options.theiler_window;
  const NeighborIndex index(base);
  std::size_t counted = 0;
  std::size_t false_count = 0;
  for (std::size_t i = 0; i < full.rows(); ++i) {
    const auto row = base.row(static_cast<Eigen::Index>(i));
    const auto nn = index.knn({row.data(), dim}, 1, TemporalExclusion{i, window});
    if (nn.empty()) continue;
    const double d = nn.front().distance;
    if (!(d > 0.0)) continue;
    const double extra = std::abs(lifted_col(static_cast<Eigen::Index>(i)) -
                                  lifted_col(static_cast<Eigen::Index>(nn.front().index)));
    const double d_lifted = std::sqrt(d * d + extra * extra);
    ++counted;
    if (extra / d > options.distance_ratio || d_lifted / sigma > options.attractor_ratio) ++false_count;
  }
  if (counted == 0) return 0.0;
  return static_cast<double>(false_count) / static_cast<double>(counted);
}

DimensionSelection select_dimension_fnn(const TimeSeries& series, std::size_t lag, double tolerance,
                                        std::size_t max_dim, const FnnOptions& options) {
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "false-neighbor tolerance must lie in (0, 1)");
  }
  if (lag < 1 || max_dim < 1) throw Error(ErrorCode::InvalidArgument, "lag and max_dim must be >= 1");
  if (series.size() <= max_dim * lag + 1) {
    throw Error(ErrorCode::SeriesTooShort, "series too short to embed at dimension " + std::to_string(max_dim));
  }
  DimensionSelection out{max_dim, true, {}};
  for (std::size_t q = 1; q <= max_dim; ++q) {
    const double f = false_neighbor_fraction(series, lag, q, options);
    out.fractions.push_back(f);
    if (f < tolerance) {
      out.dim = q;
      out.saturated = false;
      return out;
    }
  }
  return out;
}

}  // namespace tsci
