#include "tsci/score.hpp"

#include "tsci/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsci {

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

double flattened_pearson(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw Error(ErrorCode::AlignmentMismatch, "matrix shapes differ");
  }
  const auto a = A.reshaped().array() - A.mean();
  const auto b = B.reshaped().array() - B.mean();
  const double denom = std::sqrt((a * a).sum() * (b * b).sum());
  if (!(denom > 0.0)) return 0.0;
  return (a * b).sum() / denom;
}

ScoreResult cosine_score(const Matrix& U_hat, const Matrix& U) {
  if (U_hat.rows() != U.rows() || U_hat.cols() != U.cols()) {
    throw Error(ErrorCode::AlignmentMismatch, "pushed-forward and native vector fields differ in shape");
  }
  if (U.rows() == 0) throw Error(ErrorCode::AllRowsDegenerate, "no rows to score");
  ScoreResult out;
  out.cosines.reserve(static_cast<std::size_t>(U.rows()));
  for (Eigen::Index t = 0; t < U.rows(); ++t) {
    const double nh = U_hat.row(t).norm();
    const double nu = U.row(t).norm();
    if (nh < kDegenerateNorm || nu < kDegenerateNorm) {
      ++out.n_dropped;
      continue;
    }
    const double c = U_hat.row(t).dot(U.row(t)) / (nh * nu);
    out.cosines.push_back(std::clamp(c, -1.0, 1.0));
  }
  if (out.cosines.empty()) throw Error(ErrorCode::AllRowsDegenerate, "every tangent row has near-zero norm");
  out.n_used = out.cosines.size();
  out.r = compensated_sum(out.cosines) / static_cast<double>(out.n_used);
  out.flattened_pearson = flattened_pearson(U_hat, U);
  return out;
}

namespace {

std::vector<std::size_t> all_rows(Eigen::Index n) {
  std::vector<std::size_t> r(static_cast<std::size_t>(n));
  std::iota(r.begin(), r.end(), std::size_t{0});
  return r;
}

}  // namespace

Matrix pushforward_knn(const Matrix& X, const Matrix& Y, const Matrix& V, const KnnConfig& cfg,
                       std::span<const std::size_t> rows, std::span<const std::size_t> library) {
  if (Y.rows() != V.rows() || Y.cols() != V.cols()) {
    throw Error(ErrorCode::AlignmentMismatch, "Y and V are not row-aligned");
  }
  const LocalJacobianEstimator estimator(X, Y, cfg, library);
  const std::vector<std::size_t> every = rows.empty() ? all_rows(Y.rows()) : std::vector<std::size_t>{};
  const std::span<const std::size_t> eval = rows.empty() ? std::span<const std::size_t>(every) : rows;
  Matrix out(static_cast<Eigen::Index>(eval.size()), X.cols());
  for (std::size_t i = 0; i < eval.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = V.row(static_cast<Eigen::Index>(eval[i])) * estimator.at(eval[i]);
  }
  return out;
}

Matrix pushforward_model(const Matrix& Y, const Matrix& V, const CrossMapModel& model,
                         std::span<const std::size_t> rows) {
  if (Y.rows() != V.rows() || Y.cols() != V.cols()) {
    throw Error(ErrorCode::AlignmentMismatch, "Y and V are not row-aligned");
  }
  if (model.input_dim() != static_cast<std::size_t>(Y.cols())) {
    throw Error(ErrorCode::AlignmentMismatch, "model input dimension differs from Y");
  }
  const std::vector<std::size_t> every = rows.empty() ? all_rows(Y.rows()) : std::vector<std::size_t>{};
  const std::span<const std::size_t> eval = rows.empty() ? std::span<const std::size_t>(every) : rows;
  Matrix out(static_cast<Eigen::Index>(eval.size()), static_cast<Eigen::Index>(model.output_dim()));
  for (std::size_t i = 0; i < eval.size(); ++i) {
    const auto t = static_cast<Eigen::Index>(eval[i]);
    const Matrix J = model.jacobian({Y.row(t).data(), static_cast<std::size_t>(Y.cols())});
    out.row(static_cast<Eigen::Index>(i)) = V.row(t) * J.transpose();
  }
  return out;
}

ScoreResult tsci_score_knn(const Matrix& X, const Matrix& U, const Matrix& Y, const Matrix& V,
                           const KnnConfig& cfg) {
  if (X.rows() != U.rows() || X.cols() != U.cols()) {
    throw Error(ErrorCode::AlignmentMismatch, "X and U are not row-aligned");
  }
  return cosine_score(pushforward_knn(X, Y, V, cfg), U);
}

ScoreResult tsci_score_model(const Matrix& X, const Matrix& U, const Matrix& Y, const Matrix& V,
                             const CrossMapModel& model) {
  if (X.rows() != U.rows() || X.cols() != U.cols() || X.rows() != Y.rows()) {
    throw Error(ErrorCode::AlignmentMismatch, "X, U and Y are not row-aligned");
  }
  return cosine_score(pushforward_model(Y, V, model), U);
}

}  // namespace tsci
