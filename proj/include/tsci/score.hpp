#pragma once

#include "tsci/crossmap.hpp"
#include "tsci/time_series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsci {

/// Tangent rows with a norm below this are dropped from the statistic.
inline constexpr double kDegenerateNorm = 1e-12;

struct ScoreResult {
  double r = 0.0;                // mean of `cosines`
  std::vector<double> cosines;   // one per retained row, in row order
  std::size_t n_used = 0;
  std::size_t n_dropped = 0;     // rows with a near-zero tangent vector
  double flattened_pearson = 0.0;  // Pearson correlation over all T*Q entries
  std::string direction_label = "X->Y";
};

/// Per-row cosine similarity between pushed-forward and native tangent vectors.
ScoreResult cosine_score(const Matrix& U_hat, const Matrix& U);

/// Pearson correlation of the two matrices flattened to vectors.
double flattened_pearson(const Matrix& A, const Matrix& B);

/// U_hat rows V_t * J_t with J_t the local linear cross-map Jacobian of
/// Y -> X at row t. `rows` selects the evaluated rows (all when empty);
/// `library` restricts neighbor candidates (all when empty).
Matrix pushforward_knn(const Matrix& X, const Matrix& Y, const Matrix& V, const KnnConfig& cfg,
                       std::span<const std::size_t> rows = {}, std::span<const std::size_t> library = {});

/// U_hat rows V_t * J_F(Y_t)^T for a fitted model F: Y -> X.
Matrix pushforward_model(const Matrix& Y, const Matrix& V, const CrossMapModel& model,
                         std::span<const std::size_t> rows = {});

/// r_{X->Y} with the nearest-neighbor local-linear cross map from Y to X.
ScoreResult tsci_score_knn(const Matrix& X, const Matrix& U, const Matrix& Y, const Matrix& V,
                           const KnnConfig& cfg);

/// r_{X->Y} with a model fitted on (Y -> X).
ScoreResult tsci_score_model(const Matrix& X, const Matrix& U, const Matrix& Y, const Matrix& V,
                             const CrossMapModel& model);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

}  // namespace tsci
