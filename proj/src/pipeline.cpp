#include "tsci/pipeline.hpp"

#include "tsci/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsci {

std::string_view to_string(CrossMapMethod method) {
  return method == CrossMapMethod::Knn ? "knn" : "kernel_ridge";
}

std::string_view to_string(Direction direction) {
  return direction == Direction::XToY ? "X->Y" : "Y->X";
}

EmbeddingParams choose_embedding(const TimeSeries& series, const EmbeddingChoice& choice) {
  EmbeddingParams p;
  p.lag = choice.lag ? *choice.lag : select_lag(series, choice.acf_threshold).lag;
  p.dim = choice.dim ? *choice.dim
                     : select_dimension_fnn(series, p.lag, choice.fnn_tolerance, choice.max_dim).dim;
  return p;
}

Reconstruction reconstruct(const TimeSeries& series, EmbeddingParams params, const DerivativeConfig& derivative) {
  Reconstruction r{delay_embed(series, params), {}};
  r.field = vector_field_for_embedding(estimate_derivative(series, derivative), params, derivative.method);
  align_rows(r.embedding, r.field);
  return r;
}

AlignedPair align_pair(const Reconstruction& x, const Reconstruction& y) {
  const std::size_t first = std::max(x.embedding.base_offset, y.embedding.base_offset);
  const std::size_t end_x = x.embedding.base_offset + x.embedding.rows();
  const std::size_t end_y = y.embedding.base_offset + y.embedding.rows();
  const std::size_t last = std::min(end_x, end_y);
  if (last <= first) throw Error(ErrorCode::SeriesTooShort, "reconstructions share no time indices");
  const auto n = static_cast<Eigen::Index>(last - first);
  const auto ox = static_cast<Eigen::Index>(first - x.embedding.base_offset);
  const auto oy = static_cast<Eigen::Index>(first - y.embedding.base_offset);
  AlignedPair p;
  p.X = x.embedding.points.middleRows(ox, n);
  p.U = x.field.vectors.middleRows(ox, n);
  p.Y = y.embedding.points.middleRows(oy, n);
  p.V = y.field.vectors.middleRows(oy, n);
  p.x_params = x.embedding.params;
  p.y_params = y.embedding.params;
  p.first_index = first;
  return p;
}

namespace {

std::vector<std::size_t> strided_subset(std::span<const std::size_t> rows, std::size_t n_total, std::size_t max_count) {
  std::vector<std::size_t> pool;
  if (rows.empty()) {
    pool.resize(n_total);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
  } else {
    pool.assign(rows.begin(), rows.end());
  }
  if (pool.size() <= max_count) return pool;
  std::vector<std::size_t> out;
  out.reserve(max_count);
  for (std::size_t i = 0; i < max_count; ++i) out.push_back(pool[i * pool.size() / max_count]);
  return out;
}

Matrix gather(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

}  // namespace

std::pair<Matrix, Matrix> pushforward_direction(const AlignedPair& pair, Direction direction,
                                                const PipelineConfig& config, std::span<const std::size_t> library,
                                                std::span<const std::size_t> queries) {
  const bool xy = direction == Direction::XToY;
  // Target manifold (whose vectors are compared) and source manifold (searched).
  const Matrix& target = xy ? pair.X : pair.Y;
  const Matrix& target_field = xy ? pair.U : pair.V;
  const Matrix& source = xy ? pair.Y : pair.X;
  const Matrix& source_field = xy ? pair.V : pair.U;
  const EmbeddingParams source_params = xy ? pair.y_params : pair.x_params;

  Matrix native = queries.empty() ? target_field : gather(target_field, queries);
  if (config.method == CrossMapMethod::Knn) {
    KnnConfig cfg{config.k, config.theiler_window.value_or(source_params.lag)};
    return {pushforward_knn(target, source, source_field, cfg, queries, library), std::move(native)};
  }
  const std::vector<std::size_t> train =
      strided_subset(library, static_cast<std::size_t>(source.rows()), config.kr_max_train);
  const Matrix train_in = gather(source, train);
  const Matrix train_out = gather(target, train);
  const double bandwidth =
      config.kr_bandwidth ? *config.kr_bandwidth : config.kr_bandwidth_scale * median_pairwise_distance(train_in);
  const KernelRidgeCrossMap model = fit_kernel_ridge(train_in, train_out, bandwidth, config.kr_ridge);
  return {pushforward_model(source, source_field, model, queries), std::move(native)};
}

ScoreResult score_direction(const AlignedPair& pair, Direction direction, const PipelineConfig& config,
                            std::span<const std::size_t> library, std::span<const std::size_t> queries) {
  const auto [pushed, native] = pushforward_direction(pair, direction, config, library, queries);
  ScoreResult r = cosine_score(pushed, native);
  r.direction_label = std::string(to_string(direction));
  return r;
}

AlignedPair prepare_pair(const TimeSeries& x, const TimeSeries& y, const PipelineConfig& config) {
  if (std::abs(x.dt() - y.dt()) > 1e-9 * std::max(x.dt(), y.dt())) {
    throw Error(ErrorCode::AlignmentMismatch, "series have different sampling intervals");
  }
  const EmbeddingParams px = choose_embedding(x, config.x_embedding);
  const EmbeddingParams py = choose_embedding(y, config.y_embedding);
  return align_pair(reconstruct(x, px, config.derivative), reconstruct(y, py, config.derivative));
}

BidirectionalScore tsci_bidirectional(const TimeSeries& x, const TimeSeries& y, const PipelineConfig& config) {
  const AlignedPair pair = prepare_pair(x, y, config);
  return {score_direction(pair, Direction::XToY, config), score_direction(pair, Direction::YToX, config),
          pair.x_params, pair.y_params};
}

}  // namespace tsci
