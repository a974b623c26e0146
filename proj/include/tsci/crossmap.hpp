#pragma once

#include "tsci/neighbors.hpp"
#include "tsci/time_series.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace tsci {

struct KnnConfig {
  std::size_t k = 0;               // 0 selects the caller's default
  std::size_t theiler_window = 0;  // rows with |s - t| <= window are not neighbors of t
};

/// Local linear cross map at row t: the Q_y x Q_x matrix J minimizing
/// ||dY J - dX||_F over the k nearest neighbors of Y_t, where dY and dX are the
/// neighbor displacements from Y_t and X_t. Minimum-norm on rank deficiency.
Matrix knn_local_jacobian(const Matrix& X, const Matrix& Y, std::size_t t, const KnnConfig& cfg);

/// Reusable form of knn_local_jacobian that builds the Y-space index once.
/// Neighbor candidates can be restricted to a library of rows.
class LocalJacobianEstimator {
 public:
  LocalJacobianEstimator(Matrix X, Matrix Y, KnnConfig cfg, std::span<const std::size_t> library = {});

  Matrix at(std::size_t t) const;

  const KnnConfig& config() const noexcept { return cfg_; }

 private:
  Matrix X_;
  Matrix Y_;
  KnnConfig cfg_;
  NeighborIndex index_;
};

enum class CrossMapKind { KnnLocalLinear, KernelRidge };

/// A fitted, differentiable map F from Y-space to X-space.
class CrossMapModel {
 public:
  virtual ~CrossMapModel() = default;

  virtual CrossMapKind kind() const noexcept = 0;
  virtual std::size_t input_dim() const noexcept = 0;
  virtual std::size_t output_dim() const noexcept = 0;
  virtual Vector predict(std::span<const double> y) const = 0;
  /// Q_x x Q_y Jacobian of F at y.
  virtual Matrix jacobian(std::span<const double> y) const = 0;
};

/// Gaussian-kernel ridge regression, k(a, b) = exp(-|a - b|^2 / (2 h^2)),
/// with targets centered on their mean.
class KernelRidgeCrossMap final : public CrossMapModel {
 public:
  KernelRidgeCrossMap(Matrix centers, Matrix coefficients, Vector offset, double bandwidth);

  CrossMapKind kind() const noexcept override { return CrossMapKind::KernelRidge; }
  std::size_t input_dim() const noexcept override { return static_cast<std::size_t>(centers_.cols()); }
  std::size_t output_dim() const noexcept override { return static_cast<std::size_t>(coef_.cols()); }
  Vector predict(std::span<const double> y) const override;
  Matrix jacobian(std::span<const double> y) const override;

  double bandwidth() const noexcept { return bandwidth_; }

 private:
  Vector kernel_row(std::span<const double> y) const;

  Matrix centers_;
  Matrix coef_;
  Vector offset_;
  double bandwidth_;
};

KernelRidgeCrossMap fit_kernel_ridge(const Matrix& Y, const Matrix& X, double bandwidth, double ridge);

/// Median pairwise distance over (at most) `max_points` evenly strided rows.
double median_pairwise_distance(const Matrix& Y, std::size_t max_points = 500);

/// Affine least-squares fit over the k nearest training rows of each query.
class LocalLinearCrossMap final : public CrossMapModel {
 public:
  LocalLinearCrossMap(Matrix Y, Matrix X, std::size_t k);

  CrossMapKind kind() const noexcept override { return CrossMapKind::KnnLocalLinear; }
  std::size_t input_dim() const noexcept override { return static_cast<std::size_t>(Y_.cols()); }
  std::size_t output_dim() const noexcept override { return static_cast<std::size_t>(X_.cols()); }
  Vector predict(std::span<const double> y) const override;
  Matrix jacobian(std::span<const double> y) const override;

 private:
  /// Rows: intercept, then the transposed Jacobian.
  Matrix local_fit(std::span<const double> y) const;

  Matrix Y_;
  Matrix X_;
  std::size_t k_;
  NeighborIndex index_;
};

/// Simplex-weighted nearest-neighbor prediction of `targets` rows from Y.
/// For each query row t, the k (default Q_y + 1) nearest library rows of Y_t
/// outside the Theiler window get weights exp(-d_i / d_1); if d_1 = 0 the
/// zero-distance neighbors share the weight uniformly.
Matrix ccm_predict(const Matrix& Y, const Matrix& targets, std::span<const std::size_t> library,
                   std::span<const std::size_t> queries, const KnnConfig& cfg);

}  // namespace tsci
