#pragma once

#include "tsci/time_series.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tsci {

enum class Metric { Euclidean, Chebyshev };

struct Neighbor {
  std::size_t index;  // row index in the source matrix
  double distance;
};

/// Rows i with |i - center| <= radius are never reported. radius = 0 excludes
/// only the query row itself.
struct TemporalExclusion {
  std::size_t center;
  std::size_t radius;
};

/// Exact nearest-neighbor index over the rows of a matrix.
///
/// A k-d tree (median split on the widest coordinate) above 256 points, a
/// linear scan below. Results are sorted by (distance, index), so ties break
/// deterministically toward the lower row index.
class NeighborIndex {
 public:
  explicit NeighborIndex(const Matrix& points, Metric metric = Metric::Euclidean);
  /// Index only the given rows; reported indices still refer to `points`.
  NeighborIndex(const Matrix& points, std::span<const std::size_t> rows,
                Metric metric = Metric::Euclidean);

  std::vector<Neighbor> knn(std::span<const double> query, std::size_t k,
                            std::optional<TemporalExclusion> exclude = std::nullopt) const;

  /// Number of indexed rows at distance strictly less than `radius`.
  std::size_t count_within(std::span<const double> query, double radius) const;

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  Metric metric() const noexcept { return metric_; }

  static constexpr std::size_t kBruteForceBelow = 256;
  static constexpr std::size_t kLeafSize = 16;

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    int split_dim = -1;  // -1 marks a leaf
    double split = 0.0;
    int left = -1;
    int right = -1;
  };

  int build(std::size_t begin, std::size_t end);
  double reduced_distance(const double* a, const double* b) const;
  double reduce(double axis_gap) const;
  double unreduce(double reduced) const;

  Metric metric_;
  std::size_t dim_;
  std::vector<double> coords_;     // packed copies of the indexed rows
  std::vector<std::size_t> rows_;  // coords_ slot -> source row index
  std::vector<std::size_t> order_; // tree permutation of slots
  std::vector<Node> nodes_;
};

}  // namespace tsci
