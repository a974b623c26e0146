#include "doctest.h"
#include "oracles.hpp"

#include "tsci/neighbors.hpp"

#include <random>

using namespace tsci;

TEST_CASE("knn matches exhaustive search") {
  for (std::size_t n : {50ul, 255ul, 256ul, 3000ul}) {
    for (std::size_t d : {1ul, 3ul, 7ul}) {
      const Matrix P = oracle::gaussian(n, d, static_cast<unsigned>(n * 10 + d));
      const NeighborIndex index(P);
      const Matrix Q = oracle::gaussian(20, d, 99);
      for (Eigen::Index qi = 0; qi < Q.rows(); ++qi) {
        const auto got = index.knn({Q.row(qi).data(), d}, 8);
        const auto ref = oracle::sorted_neighbors(P, Q.row(qi).data());
        REQUIRE(got.size() == 8);
        for (std::size_t j = 0; j < 8; ++j) {
          CHECK(got[j].index == ref[j].second);
          CHECK(got[j].distance == doctest::Approx(ref[j].first).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("temporal exclusion removes a window around the center") {
  const Matrix P = oracle::gaussian(1000, 2, 3);
  const NeighborIndex index(P);
  for (std::size_t t : {0ul, 10ul, 500ul, 999ul}) {
    const auto got = index.knn({P.row(t).data(), 2}, 5, TemporalExclusion{t, 7});
    const auto ref = oracle::sorted_neighbors(P, P.row(t).data(), static_cast<long>(t), 7);
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(got[j].index == ref[j].second);
      const std::size_t gap = got[j].index > t ? got[j].index - t : t - got[j].index;
      CHECK(gap > 7);
    }
  }
  // radius 0 drops only the query row
  const auto self = index.knn({P.row(3).data(), 2}, 1, TemporalExclusion{3, 0});
  CHECK(self[0].index != 3);
}

TEST_CASE("ties break toward the lower index") {
  Matrix P(600, 1);
  for (Eigen::Index i = 0; i < P.rows(); ++i) P(i, 0) = static_cast<double>(i % 3);
  const NeighborIndex index(P);
  const double q = 1.0;
  const auto got = index.knn({&q, 1}, 4);
  CHECK(got[0].index == 1);
  CHECK(got[1].index == 4);
  CHECK(got[2].index == 7);
  CHECK(got[3].index == 10);
}

TEST_CASE("Chebyshev metric and strict radius counts") {
  const Matrix P = oracle::gaussian(2000, 3, 17);
  const NeighborIndex index(P, Metric::Chebyshev);
  for (std::size_t i : {0ul, 111ul, 1999ul}) {
    const auto got = index.knn({P.row(i).data(), 3}, 4, TemporalExclusion{i, 0});
    std::vector<std::pair<double, std::size_t>> ref;
    for (std::size_t j = 0; j < 2000; ++j)
      if (j != i) ref.emplace_back(oracle::cheb(P, i, j), j);
    std::sort(ref.begin(), ref.end());
    for (std::size_t j = 0; j < 4; ++j) CHECK(got[j].index == ref[j].second);

    const double r = ref[9].first;
    std::size_t strict = 0;
    for (std::size_t j = 0; j < 2000; ++j)
      if (oracle::cheb(P, i, j) < r) ++strict;
    CHECK(index.count_within({P.row(i).data(), 3}, r) == strict);
  }
}

TEST_CASE("indexing a subset reports source rows") {
  const Matrix P = oracle::gaussian(800, 2, 8);
  std::vector<std::size_t> rows;
  for (std::size_t i = 100; i < 700; i += 2) rows.push_back(i);
  const NeighborIndex index(P, rows);
  CHECK(index.size() == rows.size());
  const auto got = index.knn({P.row(5).data(), 2}, 6);
  Matrix sub(static_cast<Eigen::Index>(rows.size()), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) sub.row(static_cast<Eigen::Index>(i)) = P.row(static_cast<Eigen::Index>(rows[i]));
  const auto ref = oracle::sorted_neighbors(sub, P.row(5).data());
  for (std::size_t j = 0; j < 6; ++j) CHECK(got[j].index == rows[ref[j].second]);
}

TEST_CASE("knn returns fewer rows when the index is small") {
  const Matrix P = oracle::gaussian(5, 2, 1);
  const NeighborIndex index(P);
  CHECK(index.knn({P.row(0).data(), 2}, 10, TemporalExclusion{0, 1}).size() == 3);
}
