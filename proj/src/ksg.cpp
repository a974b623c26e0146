#include "tsci/baselines.hpp"

#include "tsci/error.hpp"
#include "tsci/neighbors.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <random>
#include <string>

namespace tsci {

namespace {

/// Returns false when the sample is degenerate: some point has a zero-distance
/// k-th joint neighbor, or for most points that neighbor sits at exactly the
/// joint radius in both marginals (a deterministic relation between A and B).
bool ksg_estimate(const Matrix& A, const Matrix& B, std::size_t k, double& result) {
  const Eigen::Index n = A.rows();
  Matrix joint(n, A.cols() + B.cols());
  joint << A, B;
  const NeighborIndex joint_index(joint, Metric::Chebyshev);
  const NeighborIndex a_index(A, Metric::Chebyshev);
  const NeighborIndex b_index(B, Metric::Chebyshev);

  using boost::math::digamma;
  double acc = 0.0;
  Eigen::Index double_ties = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto nn = joint_index.knn({joint.row(i).data(), static_cast<std::size_t>(joint.cols())}, k,
                                    TemporalExclusion{ui, 0});
    const double eps = nn.back().distance;
    if (!(eps > 0.0)) return false;
    const auto j = static_cast<Eigen::Index>(nn.back().index);
    const double da = (A.row(i) - A.row(j)).cwiseAbs().maxCoeff();
    const double db = (B.row(i) - B.row(j)).cwiseAbs().maxCoeff();
    if (da == db) ++double_ties;
    const std::size_t na = a_index.count_within({A.row(i).data(), static_cast<std::size_t>(A.cols())}, eps) - 1;
    const std::size_t nb = b_index.count_within({B.row(i).data(), static_cast<std::size_t>(B.cols())}, eps) - 1;
    acc += digamma(static_cast<double>(na) + 1.0) + digamma(static_cast<double>(nb) + 1.0);
  }
  if (2 * double_ties > n) return false;
  result = digamma(static_cast<double>(k)) + digamma(static_cast<double>(n)) - acc / static_cast<double>(n);
  return true;
}

Matrix jitter(const Matrix& m, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix out = m;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const auto col = m.col(c);
    const double sd = std::sqrt((col.array() - col.mean()).square().mean());
    const double scale = kKsgJitterScale * (sd > 0.0 ? sd : 1.0);
    for (Eigen::Index r = 0; r < m.rows(); ++r) out(r, c) += scale * g(rng);
  }
  return out;
}

}  // namespace

double ksg_mutual_information(const Matrix& A, const Matrix& B, std::size_t k, KsgDiagnostics* diagnostics,
                              std::uint64_t jitter_seed) {
  if (A.rows() != B.rows()) throw Error(ErrorCode::AlignmentMismatch, "KSG inputs have different row counts");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "KSG needs k >= 1");
  if (static_cast<std::size_t>(A.rows()) <= k + 1) {
    throw Error(ErrorCode::TooFewSamples, "KSG needs more than k + 1 samples, got " + std::to_string(A.rows()));
  }
  if (diagnostics) diagnostics->jittered = false;
  double mi = 0.0;
  if (ksg_estimate(A, B, k, mi)) return mi;

  std::mt19937_64 rng(mix_seed(jitter_seed, 0x7a6));
  const Matrix Aj = jitter(A, rng);
  const Matrix Bj = jitter(B, rng);
  if (diagnostics) diagnostics->jittered = true;
  if (!ksg_estimate(Aj, Bj, k, mi)) {
    throw Error(ErrorCode::DegenerateNeighborhood, "duplicate points persist after jitter");
  }
  return mi;
}

double mi_pushforward_score(const Matrix& U, const Matrix& U_hat, std::size_t k) {
  if (U.rows() != U_hat.rows() || U.cols() != U_hat.cols()) {
    throw Error(ErrorCode::AlignmentMismatch, "vector fields differ in shape");
  }
  return ksg_mutual_information(U, U_hat, k);
}

}  // namespace tsci
