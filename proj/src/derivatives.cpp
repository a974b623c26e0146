#include "tsci/derivatives.hpp"

#include "tsci/error.hpp"

#include <cmath>
#include <string>

namespace tsci {

std::string_view to_string(DerivativeMethod method) {
  switch (method) {
    case DerivativeMethod::Forward: return "forward";
    case DerivativeMethod::Central: return "central";
    case DerivativeMethod::SavitzkyGolay: return "savgol";
  }
  return "central";
}

DerivativeMethod parse_derivative_method(std::string_view name) {
  if (name == "forward") return DerivativeMethod::Forward;
  if (name == "central") return DerivativeMethod::Central;
  if (name == "savgol") return DerivativeMethod::SavitzkyGolay;
  throw Error(ErrorCode::InvalidArgument, "unknown derivative method '" + std::string(name) + "'");
}

TimeSeries derivative_series(const TimeSeries& series, FiniteDifference scheme) {
  const auto x = series.values();
  const std::size_t n = x.size();
  const double dt = series.dt();
  if (scheme == FiniteDifference::Forward) {
    if (n < 2) throw Error(ErrorCode::SeriesTooShort, "forward difference needs 2 samples");
    std::vector<double> d(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) d[t] = (x[t + 1] - x[t]) / dt;
    return {std::move(d), dt};
  }
  if (n < 3) throw Error(ErrorCode::SeriesTooShort, "central difference needs 3 samples");
  std::vector<double> d(n);
  d[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * dt);
  for (std::size_t t = 1; t + 1 < n; ++t) d[t] = (x[t + 1] - x[t - 1]) / (2.0 * dt);
  d[n - 1] = (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) / (2.0 * dt);
  return {std::move(d), dt};
}

Vector savgol_weights(std::size_t window, std::size_t polyorder, int position) {
  const int half = static_cast<int>(window / 2);
  const auto w = static_cast<Eigen::Index>(window);
  const auto p = static_cast<Eigen::Index>(polyorder + 1);
  Eigen::MatrixXd vandermonde(w, p);
  for (Eigen::Index j = 0; j < w; ++j) {
    const double u = static_cast<double>(j - half);
    double pw = 1.0;
    for (Eigen::Index k = 0; k < p; ++k) {
      vandermonde(j, k) = pw;
      pw *= u;
    }
  }
  // Row k of the pseudo-inverse maps samples to the k-th fit coefficient.
  const Eigen::MatrixXd pinv =
      vandermonde.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(w, w));
  // d/du sum_k a_k u^k at u = position.
  Eigen::RowVectorXd dpoly = Eigen::RowVectorXd::Zero(p);
  double pw = 1.0;
  for (Eigen::Index k = 1; k < p; ++k) {
    dpoly(k) = static_cast<double>(k) * pw;
    pw *= static_cast<double>(position);
  }
  return (dpoly * pinv).transpose();
}

TimeSeries savgol_derivative(const TimeSeries& series, std::size_t window, std::size_t polyorder) {
  if (window == 0 || window % 2 == 0) {
    throw Error(ErrorCode::InvalidFilterConfig, "Savitzky-Golay window must be odd and positive");
  }
  if (polyorder < 1 || polyorder >= window) {
    throw Error(ErrorCode::InvalidFilterConfig, "Savitzky-Golay order must satisfy 1 <= order < window");
  }
  const auto x = series.values();
  const std::size_t n = x.size();
  if (n < window) throw Error(ErrorCode::SeriesTooShort, "series shorter than the Savitzky-Golay window");

  const int half = static_cast<int>(window / 2);
  std::vector<Vector> weights;
  weights.reserve(window);
  for (int pos = -half; pos <= half; ++pos) weights.push_back(savgol_weights(window, polyorder, pos));

  auto apply = [&](std::size_t start, int pos) {
    const Vector& wts = weights[static_cast<std::size_t>(pos + half)];
    double acc = 0.0;
    for (std::size_t j = 0; j < window; ++j) acc += wts(static_cast<Eigen::Index>(j)) * x[start + j];
    return acc / series.dt();
  };

  std::vector<double> d(n);
  const auto h = static_cast<std::size_t>(half);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < h) {
      d[i] = apply(0, static_cast<int>(i) - half);
    } else if (i + h >= n) {
      const std::size_t start = n - window;
      d[i] = apply(start, static_cast<int>(i - start) - half);
    } else {
      d[i] = apply(i - h, 0);
    }
  }
  return {std::move(d), series.dt()};
}

TimeSeries estimate_derivative(const TimeSeries& series, const DerivativeConfig& config) {
  switch (config.method) {
    case DerivativeMethod::Forward: return derivative_series(series, FiniteDifference::Forward);
    case DerivativeMethod::Central: return derivative_series(series, FiniteDifference::Central);
    case DerivativeMethod::SavitzkyGolay: return savgol_derivative(series, config.window, config.polyorder);
  }
  return derivative_series(series, FiniteDifference::Central);
}

VectorFieldSamples vector_field_for_embedding(const TimeSeries& deriv, EmbeddingParams params,
                                              DerivativeMethod method) {
  Embedding e = delay_embed(deriv, params);
  return {std::move(e.points), method, e.base_offset};
}

void align_rows(Embedding& embedding, VectorFieldSamples& field) {
  if (embedding.base_offset != field.base_offset || embedding.points.cols() != field.vectors.cols()) {
    throw Error(ErrorCode::AlignmentMismatch, "vector field does not match embedding layout");
  }
  const Eigen::Index rows = std::min(embedding.points.rows(), field.vectors.rows());
  embedding.points.conservativeResize(rows, Eigen::NoChange);
  field.vectors.conservativeResize(rows, Eigen::NoChange);
}

}  // namespace tsci
