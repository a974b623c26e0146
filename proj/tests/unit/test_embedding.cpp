#include "doctest.h"
#include "oracles.hpp"

#include "tsci/embedding.hpp"
#include "tsci/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace tsci;

namespace {

Matrix rows_of(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

std::vector<double> lorenz_x(std::size_t n, double dt) {
  std::vector<double> x;
  for (const auto& s : oracle::lorenz_trajectory({1.0, 1.0, 20.0}, dt, n)) x.push_back(s[0]);
  return x;
}

}  // namespace

TEST_CASE("delay_embed builds newest-first rows") {
  const std::vector<double> v{0, 1, 2, 3, 4, 5};
  const auto e = delay_embed(v, {1, 3});
  CHECK(e.base_offset == 2);
  CHECK(e.points == rows_of({{2, 1, 0}, {3, 2, 1}, {4, 3, 2}, {5, 4, 3}}));
  CHECK(delay_embed(v, {2, 2}).points == rows_of({{2, 0}, {3, 1}, {4, 2}, {5, 3}}));
  const std::vector<double> w{7, 8, 9};
  CHECK(delay_embed(w, {1, 1}).points == rows_of({{7}, {8}, {9}}));
}

TEST_CASE("delay_embed rejects series shorter than the span") {
  const std::vector<double> v{1, 2, 3};
  CHECK_NOTHROW(delay_embed(v, {2, 2}));
  CHECK_THROWS_AS(delay_embed(v, {2, 3}), Error);
  try {
    delay_embed(v, {1, 4});
    FAIL("expected SeriesTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SeriesTooShort);
  }
}

TEST_CASE("delay_embed shape and row property over random parameters") {
  std::mt19937_64 g(11);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t lag = 1 + g() % 7, dim = 1 + g() % 6;
    const std::size_t n = (dim - 1) * lag + 1 + g() % 40;
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(g() % 1000);
    const auto e = delay_embed(v, {lag, dim});
    REQUIRE(e.rows() == n - (dim - 1) * lag);
    for (std::size_t t = 0; t < e.rows(); ++t) {
      const auto ref = oracle::delay_row(v, e.base_offset + t, lag, dim);
      for (std::size_t q = 0; q < dim; ++q) CHECK(e.points(t, q) == ref[q]);
    }
  }
}

TEST_CASE("Q=1 embedding returns the series as a column") {
  const auto v = oracle::gaussian_series(50, 3);
  const auto e = delay_embed(v, {5, 1});
  REQUIRE(e.rows() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(e.points(i, 0) == v[i]);
}

TEST_CASE("autocorrelation is biased and unit at lag zero") {
  const TimeSeries s({1, 2, 3, 4}, 1.0);
  const auto acf = autocorrelation(s, 2);
  // mean 2.5, deviations -1.5 -0.5 0.5 1.5, population variance 1.25
  CHECK(acf[0] == doctest::Approx(1.0));
  CHECK(acf[1] == doctest::Approx((0.75 - 0.25 + 0.75) / 4.0 / 1.25));
  CHECK(acf[2] == doctest::Approx((-0.75 - 0.75) / 4.0 / 1.25));
}

TEST_CASE("select_lag on a cosine") {
  auto cosine = [](std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / 100.0);
    return TimeSeries(v, 1.0);
  };
  // Analytic crossing of 1/e at 19.2 samples; the sample estimate reaches it
  // on long records and sits one lag earlier on four periods.
  CHECK(select_lag(cosine(100000)).lag == 20);
  CHECK(select_lag(cosine(400)).lag == 19);
  CHECK_FALSE(select_lag(cosine(400)).capped);
}

TEST_CASE("select_lag on white noise and degenerate input") {
  CHECK(select_lag(TimeSeries(oracle::gaussian_series(10000, 5), 1.0)).lag == 1);
  try {
    select_lag(TimeSeries(std::vector<double>(20, 5.0), 1.0));
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVariance);
  }
  CHECK_THROWS_AS(select_lag(TimeSeries({1, 2, 3, 1}, 1.0), 1.5), Error);
}

TEST_CASE("select_lag caps at a quarter of the length") {
  std::vector<double> ramp(40);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
  const auto sel = select_lag(TimeSeries(ramp, 1.0), 0.01);
  CHECK(sel.capped);
  CHECK(sel.lag == 10);
}

TEST_CASE("false_neighbor_fraction matches the exhaustive oracle") {
  const auto x = lorenz_x(1500, 0.01);
  const TimeSeries s(x, 0.01);
  for (std::size_t dim = 1; dim <= 4; ++dim) {
    CHECK(false_neighbor_fraction(s, 10, dim) == doctest::Approx(oracle::fnn_fraction(x, 10, dim, 15.0)).epsilon(1e-12));
  }
  const auto noise = oracle::gaussian_series(800, 9);
  FnnOptions with_atol;
  with_atol.attractor_ratio = 2.0;
  for (std::size_t dim = 1; dim <= 4; ++dim) {
    CHECK(false_neighbor_fraction(TimeSeries(noise, 1.0), 1, dim, with_atol) ==
          doctest::Approx(oracle::fnn_fraction(noise, 1, dim, 15.0, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("FNN selects three dimensions for Lorenz x") {
  const auto x = lorenz_x(20000, 0.01);
  const auto sel = select_dimension_fnn(TimeSeries(x, 0.01), 10, 0.005, 10);
  CHECK(sel.dim == 3);
  CHECK_FALSE(sel.saturated);
  REQUIRE(sel.fractions.size() == 3);
  CHECK(sel.fractions[1] >= 0.005);
  CHECK(sel.fractions[2] < 0.005);
}

TEST_CASE("FNN fractions fall with dimension on Lorenz x") {
  const auto x = lorenz_x(20000, 0.01);
  const TimeSeries s(x, 0.01);
  int inversions = 0;
  double prev = 1.0;
  for (std::size_t q = 1; q <= 6; ++q) {
    const double f = false_neighbor_fraction(s, 10, q);
    if (f > prev) ++inversions;
    prev = f;
  }
  CHECK(inversions <= 1);
}

TEST_CASE("FNN selects two dimensions for a densely sampled sine") {
  std::vector<double> v(5000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.01 * static_cast<double>(i));
  const TimeSeries s(v, 0.01);
  const auto lag = select_lag(s).lag;
  const auto sel = select_dimension_fnn(s, lag, 0.005, 10);
  CHECK(sel.dim == 2);
  CHECK_FALSE(sel.saturated);
}

TEST_CASE("FNN saturates on white noise with the attractor-size test") {
  const TimeSeries s(oracle::gaussian_series(2000, 21), 1.0);
  FnnOptions opts;
  opts.attractor_ratio = 2.0;
  const auto sel = select_dimension_fnn(s, 1, 0.005, 6, opts);
  CHECK(sel.dim == 6);
  CHECK(sel.saturated);
  for (double f : sel.fractions) CHECK(f >= 0.005);
  // The distance ratio alone stops flagging noise once neighbors are far apart.
  CHECK(select_dimension_fnn(s, 1, 0.005, 6).dim < 6);
}

TEST_CASE("select_dimension_fnn validates its arguments") {
  const TimeSeries s(oracle::gaussian_series(100, 1), 1.0);
  CHECK_THROWS_AS(select_dimension_fnn(s, 1, 0.0, 5), Error);
  try {
    select_dimension_fnn(s, 20, 0.005, 10);
    FAIL("expected SeriesTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SeriesTooShort);
  }
}
