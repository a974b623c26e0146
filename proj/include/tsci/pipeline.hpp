#pragma once

#include "tsci/derivatives.hpp"
#include "tsci/embedding.hpp"
#include "tsci/score.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace tsci {

/// Automatic lag/dimension selection with optional fixed overrides.
struct EmbeddingChoice {
  std::optional<std::size_t> lag;
  std::optional<std::size_t> dim;
  double acf_threshold = kDefaultAcfThreshold;
  double fnn_tolerance = kDefaultFnnTolerance;
  std::size_t max_dim = 10;
};

EmbeddingParams choose_embedding(const TimeSeries& series, const EmbeddingChoice& choice);

/// Shadow manifold of one series together with its tangent vectors.
struct Reconstruction {
  Embedding embedding;
  VectorFieldSamples field;
};

Reconstruction reconstruct(const TimeSeries& series, EmbeddingParams params, const DerivativeConfig& derivative);

/// Both reconstructions cut to the time indices they share. Row t of every
/// matrix refers to source index first_index + t.
struct AlignedPair {
  Matrix X, U, Y, V;
  EmbeddingParams x_params, y_params;
  std::size_t first_index = 0;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(X.rows()); }
};

AlignedPair align_pair(const Reconstruction& x, const Reconstruction& y);

enum class CrossMapMethod { Knn, KernelRidge };
std::string_view to_string(CrossMapMethod method);

struct PipelineConfig {
  EmbeddingChoice x_embedding;
  EmbeddingChoice y_embedding;
  DerivativeConfig derivative;
  CrossMapMethod method = CrossMapMethod::Knn;
  std::size_t k = 0;                          // 0: 4 * max(Q_x, Q_y)
  std::optional<std::size_t> theiler_window;  // default: lag of the searched embedding
  // Kernel ridge: bandwidth = scale * median pairwise distance unless fixed.
  std::optional<double> kr_bandwidth;
  double kr_bandwidth_scale = 0.15;
  double kr_ridge = 1e-6;
  std::size_t kr_max_train = 5000;
};

enum class Direction { XToY, YToX };
std::string_view to_string(Direction direction);

/// Scores one direction on an aligned pair. X->Y fits the cross map from the
/// y-manifold to the x-manifold. `library` restricts the training rows and
/// `queries` the scored rows; both default to every row.
ScoreResult score_direction(const AlignedPair& pair, Direction direction, const PipelineConfig& config,
                            std::span<const std::size_t> library = {}, std::span<const std::size_t> queries = {});

/// Same cross map as score_direction, returning (U_hat, U) for the scored rows.
std::pair<Matrix, Matrix> pushforward_direction(const AlignedPair& pair, Direction direction,
                                                const PipelineConfig& config,
                                                std::span<const std::size_t> library = {},
                                                std::span<const std::size_t> queries = {});

struct BidirectionalScore {
  ScoreResult x_to_y;
  ScoreResult y_to_x;
  EmbeddingParams x_params;
  EmbeddingParams y_params;
};

AlignedPair prepare_pair(const TimeSeries& x, const TimeSeries& y, const PipelineConfig& config);

BidirectionalScore tsci_bidirectional(const TimeSeries& x, const TimeSeries& y, const PipelineConfig& config);

}  // namespace tsci
