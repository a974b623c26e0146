#include "tsci/baselines.hpp"

#include "tsci/error.hpp"

#include <boost/math/distributions/fisher_f.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tsci {

namespace {

double residual_ss(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols()) {
    throw Error(ErrorCode::SingularDesign, "autoregression design matrix is rank deficient");
  }
  const Eigen::VectorXd beta = qr.solve(target);
  return (target - design * beta).squaredNorm();
}

}  // namespace

GrangerTest granger_one_way(std::span<const double> cause, std::span<const double> effect, std::size_t lag) {
  if (lag < 1) throw Error(ErrorCode::InvalidArgument, "Granger lag order must be >= 1");
  if (cause.size() != effect.size()) throw Error(ErrorCode::AlignmentMismatch, "series lengths differ");
  const std::size_t n = effect.size();
  if (n <= 3 * lag + 1) {
    throw Error(ErrorCode::SeriesTooShort, "need more than " + std::to_string(3 * lag + 1) + " samples");
  }
  const std::size_t obs = n - lag;
  const auto rows = static_cast<Eigen::Index>(obs);
  const auto p = static_cast<Eigen::Index>(lag);

  Eigen::VectorXd target(rows);
  Eigen::MatrixXd full(rows, 1 + 2 * p);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t t = static_cast<std::size_t>(r) + lag;
    target(r) = effect[t];
    full(r, 0) = 1.0;
    for (Eigen::Index j = 1; j <= p; ++j) {
      full(r, j) = effect[t - static_cast<std::size_t>(j)];
      full(r, p + j) = cause[t - static_cast<std::size_t>(j)];
    }
  }
  const double rss_r = residual_ss(full.leftCols(1 + p), target);
  const double rss_u = residual_ss(full, target);

  GrangerTest out{};
  out.df_num = lag;
  out.df_den = obs - 2 * lag - 1;
  out.rss_restricted = rss_r;
  out.rss_unrestricted = std::min(rss_u, rss_r);  // nested models
  const double num = (rss_r - out.rss_unrestricted) / static_cast<double>(out.df_num);
  if (!(out.rss_unrestricted > 0.0)) {
    out.f_statistic = num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    out.p_value = num > 0.0 ? 0.0 : 1.0;
    return out;
  }
  out.f_statistic = std::max(0.0, num / (out.rss_unrestricted / static_cast<double>(out.df_den)));
  const boost::math::fisher_f dist(static_cast<double>(out.df_num), static_cast<double>(out.df_den));
  out.p_value = std::clamp(boost::math::cdf(boost::math::complement(dist, out.f_statistic)), 0.0, 1.0);
  return out;
}

GrangerResult granger_f_test(const TimeSeries& x, const TimeSeries& y, std::size_t max_lag) {
  const GrangerTest xy = granger_one_way(x.values(), y.values(), max_lag);
  const GrangerTest yx = granger_one_way(y.values(), x.values(), max_lag);
  return {xy.p_value, yx.p_value, max_lag, {xy.f_statistic, yx.f_statistic}};
}

}  // namespace tsci
