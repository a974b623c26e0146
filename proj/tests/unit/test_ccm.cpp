#include "doctest.h"
#include "oracles.hpp"

#include "tsci/ccm.hpp"
#include "tsci/error.hpp"
#include "tsci/systems.hpp"

#include <cmath>

using namespace tsci;

namespace {

TimeSeries lorenz_x(std::size_t n, oracle::State3 start = {1.0, 1.0, 20.0}) {
  std::vector<double> v;
  for (const auto& s : oracle::lorenz_trajectory(start, 0.02, n)) v.push_back(s[0]);
  return TimeSeries(v, 0.02);
}

}  // namespace

TEST_CASE("library sampling") {
  const auto s = sample_library(100, 30, 7);
  REQUIRE(s.library.size() == 30);
  CHECK(s.queries.size() == 70);
  for (std::size_t i = 1; i < s.library.size(); ++i) CHECK(s.library[i] == s.library[i - 1] + 1);
  for (std::size_t q : s.queries) CHECK((q < s.library.front() || q > s.library.back()));
  const auto again = sample_library(100, 30, 7);
  CHECK(again.library == s.library);

  const auto full = sample_library(50, 50, 1);
  CHECK(full.queries == full.library);
  try {
    sample_library(50, 51, 1);
    FAIL("expected LibraryTooLong");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LibraryTooLong);
  }
}

TEST_CASE("identical series cross map almost perfectly") {
  const auto x = lorenz_x(3000);
  const CcmParams p{{5, 3}, {5, 3}, std::nullopt};
  CHECK(ccm_skill(x, x, p, 2000, 3) > 0.99);
}

TEST_CASE("independent noise has no skill") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const TimeSeries a(oracle::gaussian_series(10000, seed), 1.0);
    const TimeSeries b(oracle::gaussian_series(10000, seed + 100), 1.0);
    const CcmParams p{{1, 3}, {1, 3}, std::nullopt};
    const double r = ccm_skill(a, b, p, 5000, seed);
    CHECK(std::abs(r) < 0.15);
  }
}

TEST_CASE("skill is bounded and deterministic") {
  const auto x = lorenz_x(2000);
  const auto y = lorenz_x(2000, {-2.0, 3.0, 15.0});
  const CcmParams p{{5, 3}, {5, 3}, std::nullopt};
  const double a = ccm_skill(x, y, p, 800, 11), b = ccm_skill(x, y, p, 800, 11);
  CHECK(a == b);
  CHECK(a >= -1.0);
  CHECK(a <= 1.0);
}

TEST_CASE("convergence table layout and singleton statistics") {
  const auto x = lorenz_x(1500);
  CcmConfig cfg;
  cfg.library_lengths = {100, 400, 1000};
  cfg.x_embedding = EmbeddingParams{5, 3};
  cfg.y_embedding = EmbeddingParams{5, 3};
  cfg.trials = 1;
  const auto rows = ccm_convergence(x, x, cfg);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].library_length == cfg.library_lengths[i / 2]);
    CHECK(rows[i].direction == (i % 2 == 0 ? Direction::XToY : Direction::YToX));
    CHECK(rows[i].summary.p5 == rows[i].summary.median);
    CHECK(rows[i].summary.p95 == rows[i].summary.median);
    CHECK(rows[i].summary.median > 0.95);
  }
  cfg.library_lengths = {400, 100};
  CHECK_THROWS_AS(ccm_convergence(x, x, cfg), Error);
}

TEST_CASE("coupled system: skill grows with library length in the causal direction") {
  SimulationConfig sim;
  sim.coupling = 1.0;
  sim.seed = 2;
  const auto s = rk4_integrate(sim);
  CcmConfig cfg;
  cfg.library_lengths = {250, 1000, 4000};
  cfg.trials = 3;
  const auto rows = ccm_convergence(s[1], s[3], cfg);
  REQUIRE(rows.size() == 6);
  CHECK(rows[4].summary.median > rows[0].summary.median);
  CHECK(rows[4].summary.median > rows[5].summary.median);
}
