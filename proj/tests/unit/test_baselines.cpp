#include "doctest.h"
#include "oracles.hpp"

#include "tsci/baselines.hpp"
#include "tsci/error.hpp"
#include "tsci/systems.hpp"

#include <cmath>
#include <random>

using namespace tsci;

namespace {

std::pair<Matrix, Matrix> correlated_pair(std::size_t n, double rho, unsigned seed) {
  const Matrix z = oracle::gaussian(n, 2, seed);
  Matrix a = z.col(0);
  Matrix b = (rho * z.col(0) + std::sqrt(1.0 - rho * rho) * z.col(1)).eval();
  return {a, b};
}

std::pair<TimeSeries, TimeSeries> lagged_pair(std::size_t n, unsigned seed) {
  const auto x = oracle::gaussian_series(n, seed);
  const auto e = oracle::gaussian_series(n, seed + 1000);
  std::vector<double> y(n);
  y[0] = e[0];
  for (std::size_t t = 1; t < n; ++t) y[t] = 0.9 * x[t - 1] + 0.1 * e[t];
  return {TimeSeries(x, 1.0), TimeSeries(y, 1.0)};
}

}  // namespace

TEST_CASE("Granger detects a one-step lagged driver") {
  int pass = 0;
  for (unsigned seed = 10; seed < 20; ++seed) {
    const auto [x, y] = lagged_pair(1000, seed);
    const auto g = granger_f_test(x, y, 5);
    CHECK(g.lag_order == 5);
    if (g.p_xy < 0.01 && g.p_yx > 0.05) ++pass;
  }
  CHECK(pass >= 9);
}

TEST_CASE("Granger false-positive rate is nominal") {
  int rejected = 0;
  for (unsigned seed = 0; seed < 400; ++seed) {
    const auto [x, y] = lagged_pair(1000, seed);
    if (granger_f_test(x, y, 5).p_yx < 0.05) ++rejected;
  }
  CHECK(rejected >= 8);
  CHECK(rejected <= 36);
}

TEST_CASE("Granger on independent noise") {
  int pass = 0;
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto g = granger_f_test(TimeSeries(oracle::gaussian_series(1000, seed), 1.0),
                                  TimeSeries(oracle::gaussian_series(1000, seed + 50), 1.0), 5);
    CHECK(g.p_xy >= 0.0);
    CHECK(g.p_xy <= 1.0);
    CHECK(g.f_statistics.first >= 0.0);
    CHECK(g.f_statistics.second >= 0.0);
    if (g.p_xy > 0.05 && g.p_yx > 0.05) ++pass;
  }
  CHECK(pass >= 8);
}

TEST_CASE("Granger F statistic and degrees of freedom") {
  const auto [x, y] = lagged_pair(400, 3);
  const auto t = granger_one_way(x.values(), y.values(), 3);
  CHECK(t.df_num == 3);
  CHECK(t.df_den == 397 - 2 * 3 - 1);
  CHECK(t.rss_unrestricted <= t.rss_restricted);
  const double f = ((t.rss_restricted - t.rss_unrestricted) / 3.0) / (t.rss_unrestricted / static_cast<double>(t.df_den));
  CHECK(t.f_statistic == doctest::Approx(f).epsilon(1e-12));
}

TEST_CASE("Granger p-values are affine invariant") {
  const auto [x, y] = lagged_pair(600, 8);
  std::vector<double> xs(x.size()), ys(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xs[i] = -4.0 * x[i] + 17.0;
    ys[i] = 0.25 * y[i] - 3.0;
  }
  const auto base = granger_f_test(TimeSeries(oracle::gaussian_series(600, 1), 1.0), y, 4);
  const auto g1 = granger_f_test(x, y, 4), g2 = granger_f_test(TimeSeries(xs, 1.0), TimeSeries(ys, 1.0), 4);
  CHECK(std::abs(g1.p_xy - g2.p_xy) < 1e-8);
  CHECK(std::abs(g1.p_yx - g2.p_yx) < 1e-8);
  std::vector<double> ns(y.size());
  const auto noise = oracle::gaussian_series(600, 1);
  for (std::size_t i = 0; i < ns.size(); ++i) ns[i] = 3.0 * noise[i] + 1.0;
  const auto g3 = granger_f_test(TimeSeries(ns, 1.0), y, 4);
  CHECK(std::abs(base.p_xy - g3.p_xy) < 1e-8);
  CHECK(std::abs(base.p_yx - g3.p_yx) < 1e-8);
}

TEST_CASE("Granger errors") {
  const TimeSeries s(oracle::gaussian_series(10, 1), 1.0);
  try {
    granger_f_test(s, s, 5);
    FAIL("expected SeriesTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SeriesTooShort);
  }
  const TimeSeries c(std::vector<double>(100, 2.0), 1.0);
  try {
    granger_f_test(c, TimeSeries(oracle::gaussian_series(100, 2), 1.0), 2);
    FAIL("expected SingularDesign");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularDesign);
  }
}

TEST_CASE("Granger on the coupled system at C = 1.5") {
  SimulationConfig cfg;
  cfg.coupling = 1.5;
  const auto s = rk4_integrate(cfg);
  const auto g = granger_f_test(s[1], s[3], 5);
  CHECK(g.p_xy < 0.001);
  CHECK(g.p_yx < 0.001);
}

TEST_CASE("KSG matches the exhaustive oracle") {
  const auto [a, b] = correlated_pair(400, 0.6, 3);
  for (std::size_t k : {1ul, 4ul, 7ul}) {
    CHECK(ksg_mutual_information(a, b, k) == doctest::Approx(oracle::ksg(a, b, k)).epsilon(1e-9));
  }
  const Matrix A = oracle::gaussian(300, 2, 4);
  Matrix B(300, 3);
  B << A.col(0) + 0.3 * oracle::gaussian(300, 1, 5), oracle::gaussian(300, 2, 6);
  CHECK(ksg_mutual_information(A, B, 3) == doctest::Approx(oracle::ksg(A, B, 3)).epsilon(1e-9));
}

TEST_CASE("KSG on Gaussian pairs") {
  const auto [a, b] = correlated_pair(5000, 0.9, 10);
  CHECK(std::abs(ksg_mutual_information(a, b, 4) - 0.8304) < 0.1);
  const auto [c, d] = correlated_pair(5000, 0.0, 11);
  CHECK(std::abs(ksg_mutual_information(c, d, 4)) < 0.05);
}

TEST_CASE("KSG is invariant to monotone reparametrization") {
  const auto [a, b] = correlated_pair(5000, 0.9, 12);
  const Matrix ea = a.array().exp().matrix();
  CHECK(std::abs(ksg_mutual_information(a, b, 4) - ksg_mutual_information(ea, b, 4)) < 0.05);
}

TEST_CASE("KSG on identical inputs jitters and stays finite") {
  const Matrix a = oracle::gaussian(5000, 1, 20);
  KsgDiagnostics diag;
  const double mi = ksg_mutual_information(a, a, 4, &diag);
  CHECK(diag.jittered);
  CHECK(std::isfinite(mi));
  CHECK(mi > 3.0);

  const auto [c, d] = correlated_pair(500, 0.5, 21);
  ksg_mutual_information(c, d, 4, &diag);
  CHECK_FALSE(diag.jittered);
}

TEST_CASE("KSG preconditions") {
  const Matrix a = oracle::gaussian(5, 1, 1);
  try {
    ksg_mutual_information(a, a, 4);
    FAIL("expected TooFewSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewSamples);
  }
}

TEST_CASE("MI pushforward score") {
  const Matrix U = oracle::gaussian(2000, 2, 30);
  const Matrix other = oracle::gaussian(2000, 2, 31);
  CHECK(std::abs(mi_pushforward_score(U, other, 4)) < 0.05);
  // 20 dB: noise variance one hundredth of the signal variance
  const Matrix near = U + 0.1 * oracle::gaussian(2000, 2, 32);
  CHECK(mi_pushforward_score(U, near, 4) > 1.0);
  CHECK_THROWS_AS(mi_pushforward_score(U, U.leftCols(1), 4), Error);
}
