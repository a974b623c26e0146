#pragma once

#include "tsci/time_series.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace tsci {

// ---- Granger causality -------------------------------------------------

struct GrangerTest {
  double f_statistic;
  double p_value;
  std::size_t df_num;
  std::size_t df_den;
  double rss_restricted;
  double rss_unrestricted;
};

/// F-test of whether `lag` lags of `cause` improve an intercept + `lag`-lag
/// autoregression of `effect`.
GrangerTest granger_one_way(std::span<const double> cause, std::span<const double> effect, std::size_t lag);

struct GrangerResult {
  double p_xy;  // x Granger-causes y
  double p_yx;  // y Granger-causes x
  std::size_t lag_order;
  std::pair<double, double> f_statistics;  // (x->y, y->x)
};

GrangerResult granger_f_test(const TimeSeries& x, const TimeSeries& y, std::size_t max_lag);

// ---- KSG mutual information --------------------------------------------

struct KsgDiagnostics {
  bool jittered = false;  // duplicate joint points were separated by jitter
};

inline constexpr double kKsgJitterScale = 1e-10;

/// Kraskov-Stoegbauer-Grassberger estimator (first variant), in nats:
/// psi(k) + psi(T) - <psi(n_a + 1) + psi(n_b + 1)>, with marginal counts
/// strictly inside the Chebyshev distance to the k-th joint neighbor.
double ksg_mutual_information(const Matrix& A, const Matrix& B, std::size_t k,
                              KsgDiagnostics* diagnostics = nullptr, std::uint64_t jitter_seed = 0);

/// Mutual information between native and pushed-forward tangent vectors.
double mi_pushforward_score(const Matrix& U, const Matrix& U_hat, std::size_t k);

}  // namespace tsci
