#include "tsci/crossmap.hpp"

#include "tsci/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tsci {

namespace {

std::span<const double> row_span(const Matrix& m, std::size_t r) {
  return {m.data() + r * static_cast<std::size_t>(m.cols()), static_cast<std::size_t>(m.cols())};
}

}  // namespace

LocalJacobianEstimator::LocalJacobianEstimator(Matrix X, Matrix Y, KnnConfig cfg,
                                               std::span<const std::size_t> library)
    : X_(std::move(X)), Y_(std::move(Y)), cfg_(cfg), index_(Y_, library) {
  if (X_.rows() != Y_.rows()) {
    throw Error(ErrorCode::AlignmentMismatch, "cross-map embeddings have different row counts");
  }
  const auto max_dim = static_cast<std::size_t>(std::max(X_.cols(), Y_.cols()));
  if (cfg_.k == 0) cfg_.k = 4 * max_dim;
  if (cfg_.k <= max_dim) {
    throw Error(ErrorCode::InvalidArgument, "local Jacobian needs k > max(Q_x, Q_y); got k=" +
                                                std::to_string(cfg_.k));
  }
}

Matrix LocalJacobianEstimator::at(std::size_t t) const {
  if (t >= static_cast<std::size_t>(Y_.rows())) throw Error(ErrorCode::InvalidArgument, "row out of range");
  const auto nn = index_.knn(row_span(Y_, t), cfg_.k, TemporalExclusion{t, cfg_.theiler_window});
  if (nn.size() < cfg_.k) {
    throw Error(ErrorCode::NotEnoughNeighbors, "only " + std::to_string(nn.size()) + " of " +
                                                   std::to_string(cfg_.k) + " neighbors available");
  }
  const auto k = static_cast<Eigen::Index>(nn.size());
  const auto ti = static_cast<Eigen::Index>(t);
  Eigen::MatrixXd dY(k, Y_.cols());
  Eigen::MatrixXd dX(k, X_.cols());
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto s = static_cast<Eigen::Index>(nn[static_cast<std::size_t>(i)].index);
    dY.row(i) = Y_.row(s) - Y_.row(ti);
    dX.row(i) = X_.row(s) - X_.row(ti);
  }
  if (dY.isZero(0.0)) {
    throw Error(ErrorCode::DegenerateNeighborhood, "all neighbor displacements vanish at row " + std::to_string(t));
  }
  return dY.completeOrthogonalDecomposition().solve(dX);
}

Matrix knn_local_jacobian(const Matrix& X, const Matrix& Y, std::size_t t, const KnnConfig& cfg) {
  return LocalJacobianEstimator(X, Y, cfg).at(t);
}

KernelRidgeCrossMap::KernelRidgeCrossMap(Matrix centers, Matrix coefficients, Vector offset, double bandwidth)
    : centers_(std::move(centers)), coef_(std::move(coefficients)), offset_(std::move(offset)), bandwidth_(bandwidth) {}

Vector KernelRidgeCrossMap::kernel_row(std::span<const double> y) const {
  const Eigen::Map<const Eigen::RowVectorXd> q(y.data(), static_cast<Eigen::Index>(y.size()));
  const double inv = 1.0 / (2.0 * bandwidth_ * bandwidth_);
  Vector k(centers_.rows());
  for (Eigen::Index i = 0; i < centers_.rows(); ++i) {
    k(i) = std::exp(-(centers_.row(i) - q).squaredNorm() * inv);
  }
  return k;
}

Vector KernelRidgeCrossMap::predict(std::span<const double> y) const {
  if (y.size() != input_dim()) throw Error(ErrorCode::InvalidArgument, "query dimension mismatch");
  return offset_ + coef_.transpose() * kernel_row(y);
}

Matrix KernelRidgeCrossMap::jacobian(std::span<const double> y) const {
  if (y.size() != input_dim()) throw Error(ErrorCode::InvalidArgument, "query dimension mismatch");
  const Eigen::Map<const Eigen::RowVectorXd> q(y.data(), static_cast<Eigen::Index>(y.size()));
  const Vector k = kernel_row(y);
  // dk_i/dy = k_i (c_i - y) / h^2
  Matrix diff = centers_.rowwise() - q;
  diff.array().colwise() *= k.array();
  return coef_.transpose() * diff / (bandwidth_ * bandwidth_);
}

KernelRidgeCrossMap fit_kernel_ridge(const Matrix& Y, const Matrix& X, double bandwidth, double ridge) {
  if (!(bandwidth > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel bandwidth must be positive");
  if (!(ridge >= 0.0)) throw Error(ErrorCode::InvalidArgument, "ridge penalty must be non-negative");
  if (Y.rows() != X.rows()) throw Error(ErrorCode::AlignmentMismatch, "training row counts differ");
  if (Y.rows() == 0) throw Error(ErrorCode::TooFewSamples, "no training rows");

  const Eigen::Index n = Y.rows();
  const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = 1.0 + ridge;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = std::exp(-(Y.row(i) - Y.row(j)).squaredNorm() * inv);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  const Vector offset = X.colwise().mean().transpose();
  const Eigen::MatrixXd centered = X.rowwise() - offset.transpose();

  Eigen::MatrixXd coef;
  if (ridge > 0.0) {
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularGram, "regularized Gram matrix is not positive definite");
    }
    coef = llt.solve(centered);
  } else {
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
    if (qr.rank() < n) {
      throw Error(ErrorCode::SingularGram, "Gram matrix is rank deficient (duplicate rows with zero ridge)");
    }
    coef = qr.solve(centered);
  }
  return KernelRidgeCrossMap(Y, coef, offset, bandwidth);
}

double median_pairwise_distance(const Matrix& Y, std::size_t max_points) {
  const auto n = static_cast<std::size_t>(Y.rows());
  if (n < 2) throw Error(ErrorCode::TooFewSamples, "need at least two rows");
  const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(2, max_points));
  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < n; i += stride) picks.push_back(i);
  std::vector<double> d;
  d.reserve(picks.size() * (picks.size() - 1) / 2);
  for (std::size_t a = 0; a < picks.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      d.push_back((Y.row(static_cast<Eigen::Index>(picks[a])) - Y.row(static_cast<Eigen::Index>(picks[b]))).norm());
    }
  }
  auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  return *mid;
}

LocalLinearCrossMap::LocalLinearCrossMap(Matrix Y, Matrix X, std::size_t k)
    : Y_(std::move(Y)), X_(std::move(X)), k_(k), index_(Y_) {
  if (X_.rows() != Y_.rows()) throw Error(ErrorCode::AlignmentMismatch, "training row counts differ");
  if (k_ == 0) k_ = 4 * static_cast<std::size_t>(std::max(X_.cols(), Y_.cols()));
  if (k_ <= static_cast<std::size_t>(Y_.cols())) {
    throw Error(ErrorCode::InvalidArgument, "local affine fit needs k > Q_y");
  }
  if (static_cast<std::size_t>(Y_.rows()) < k_) {
    throw Error(ErrorCode::NotEnoughNeighbors, "fewer training rows than k");
  }
}

Matrix LocalLinearCrossMap::local_fit(std::span<const double> y) const {
  if (y.size() != input_dim()) throw Error(ErrorCode::InvalidArgument, "query dimension mismatch");
  const auto nn = index_.knn(y, k_);
  const Eigen::Map<const Eigen::RowVectorXd> q(y.data(), static_cast<Eigen::Index>(y.size()));
  const auto k = static_cast<Eigen::Index>(nn.size());
  Eigen::MatrixXd design(k, Y_.cols() + 1);
  Eigen::MatrixXd rhs(k, X_.cols());
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto s = static_cast<Eigen::Index>(nn[static_cast<std::size_t>(i)].index);
    design(i, 0) = 1.0;
    design.row(i).tail(Y_.cols()) = Y_.row(s) - q;
    rhs.row(i) = X_.row(s);
  }
  return design.completeOrthogonalDecomposition().solve(rhs);
}

Vector LocalLinearCrossMap::predict(std::span<const double> y) const {
  return local_fit(y).row(0).transpose();
}

Matrix LocalLinearCrossMap::jacobian(std::span<const double> y) const {
  const Matrix beta = local_fit(y);
  return beta.bottomRows(beta.rows() - 1).transpose();
}

Matrix ccm_predict(const Matrix& Y, const Matrix& targets, std::span<const std::size_t> library,
                   std::span<const std::size_t> queries, const KnnConfig& cfg) {
  if (Y.rows() != targets.rows()) throw Error(ErrorCode::AlignmentMismatch, "targets not aligned with Y");
  const std::size_t k = cfg.k == 0 ? static_cast<std::size_t>(Y.cols()) + 1 : cfg.k;
  if (library.size() < k) {
    throw Error(ErrorCode::NotEnoughNeighbors, "library of " + std::to_string(library.size()) +
                                                   " rows is smaller than k=" + std::to_string(k));
  }
  const NeighborIndex index(Y, library);
  Matrix out(static_cast<Eigen::Index>(queries.size()), targets.cols());
  std::vector<double> w(k);
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const std::size_t t = queries[qi];
    const auto nn = index.knn(row_span(Y, t), k, TemporalExclusion{t, cfg.theiler_window});
    if (nn.size() < k) {
      throw Error(ErrorCode::NotEnoughNeighbors, "query row " + std::to_string(t) + " has only " +
                                                     std::to_string(nn.size()) + " admissible neighbors");
    }
    const double d1 = nn.front().distance;
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (d1 > 0.0) {
        w[i] = std::exp(-nn[i].distance / d1);
      } else {
        w[i] = nn[i].distance == 0.0 ? 1.0 : 0.0;
      }
      total += w[i];
    }
    auto row = out.row(static_cast<Eigen::Index>(qi));
    row.setZero();
    for (std::size_t i = 0; i < k; ++i) {
      row += (w[i] / total) * targets.row(static_cast<Eigen::Index>(nn[i].index));
    }
  }
  return out;
}

}  // namespace tsci
